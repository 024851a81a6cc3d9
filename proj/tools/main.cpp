#include <CLI11.hpp>
#include <json.hpp>

#include "extball/classify.hpp"
#include "extball/errors.hpp"
#include "extball/evaluate.hpp"
#include "extball/gauss.hpp"
#include "extball/secant.hpp"
#include "extball/witness.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <numbers>
#include <string>

namespace {

using extball::cplx;
using ojson = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitUndecided = 3;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw extball::SchemaError("cannot open input '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out);
    if (!f) throw extball::SchemaError("cannot open output '" + out + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << '\n';
}

struct CommonOpts {
    std::string input = "-";
    std::string out;
    std::string format = "json";
    extball::Tolerances tols;
    bool normalize = false;

    void add(CLI::App* cmd, bool with_input = true) {
        if (with_input)
            cmd->add_option("input", input, "spec file path, or '-' for stdin");
        cmd->add_option("--out", out, "output path (default stdout)");
        cmd->add_option("--format", format, "json|csv|svg")
            ->check(CLI::IsMember({"json", "csv", "svg"}));
        cmd->add_option("--tol-quad", tols.quad, "quadrature tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-root", tols.root, "root residual tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--tol-pair", tols.pair, "conjugate-pair tolerance")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--normalize", normalize, "normalize the input to unit L1 norm");
    }

    extball::FunctionSpec load() const {
        extball::FunctionSpec s = extball::parse_spec(slurp(input));
        if (normalize) s.normalize = true;
        return s;
    }
};

struct ZeroRow {
    double re_lambda, im_lambda;
    int multiplicity;
    double w_re, w_im;
    int paired_with_row; // -1 when unpaired
};

std::vector<ZeroRow> zero_table(const extball::FunctionSpec& spec,
                                const extball::Tolerances& tols) {
    extball::SymbolZeros sz =
        spec.kind == extball::Generator::Gauss
            ? extball::symbol_zeros(extball::gauss_symbol(spec, 1e-14), tols.root)
            : extball::symbol_zeros(extball::secant_symbol(spec), tols.root);
    std::vector<ZeroRow> rows;
    for (const extball::Root& r : sz.roots) {
        const double rel = 1.0 + std::abs(r.w);
        // Positive-real roots lie on the strip boundary, not inside it.
        if (std::abs(r.w.imag()) <= 1e-9 * rel && r.w.real() > 0.0) continue;
        const cplx lam = extball::strip_zero(r.w, spec.a);
        rows.push_back({lam.real(), lam.imag(), r.multiplicity, r.w.real(),
                        r.w.imag(), -1});
    }
    for (size_t i = 0; i < rows.size(); ++i) {
        const cplx wi(rows[i].w_re, rows[i].w_im);
        if (std::abs(wi.imag()) <= 1e-9 * (1.0 + std::abs(wi))) {
            rows[i].paired_with_row = static_cast<int>(i); // negative-real: self-paired
            continue;
        }
        for (size_t j = 0; j < rows.size(); ++j) {
            if (i == j) continue;
            const cplx wj(rows[j].w_re, rows[j].w_im);
            if (std::abs(wj - std::conj(wi)) <= tols.pair * (1.0 + std::abs(wi)))
                rows[i].paired_with_row = static_cast<int>(j);
        }
    }
    return rows;
}

std::string zeros_csv(const std::vector<ZeroRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "re_lambda,im_lambda,multiplicity,w_re,w_im,paired_with_row\n";
    for (const ZeroRow& r : rows)
        os << r.re_lambda << ',' << r.im_lambda << ',' << r.multiplicity << ','
           << r.w_re << ',' << r.w_im << ',' << r.paired_with_row << '\n';
    return os.str();
}

std::string zeros_svg(const std::vector<ZeroRow>& rows, double a) {
    // Strip map: x = Re lambda, y = Im lambda in (0, pi/a).
    double xmin = -1.0, xmax = 1.0;
    for (const ZeroRow& r : rows) {
        xmin = std::min(xmin, r.re_lambda - 0.5);
        xmax = std::max(xmax, r.re_lambda + 0.5);
    }
    const double W = 640.0, H = 320.0;
    const double strip = std::numbers::pi / a;
    auto X = [&](double x) { return (x - xmin) / (xmax - xmin) * W; };
    auto Y = [&](double y) { return H - y / strip * H; };
    std::ostringstream os;
    os.precision(8);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
       << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H
       << "\" fill=\"#fcfcfc\" stroke=\"#333\"/>\n";
    os << "<line x1=\"0\" y1=\"" << Y(0.5 * strip) << "\" x2=\"" << W << "\" y2=\""
       << Y(0.5 * strip) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 4\"/>\n";
    for (const ZeroRow& r : rows) {
        const bool paired = r.paired_with_row >= 0;
        os << "<circle cx=\"" << X(r.re_lambda) << "\" cy=\"" << Y(r.im_lambda)
           << "\" r=\"" << (3 + 2 * (r.multiplicity - 1)) << "\" fill=\""
           << (paired ? "#c0392b" : "#2471a3") << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

int run_classify(const CommonOpts& o) {
    const extball::FunctionSpec spec = o.load();
    const extball::ClassificationReport rep = extball::classify(spec, o.tols);
    emit(rep.to_json().dump(2), o.out);
    return rep.overall == "Undecided" ? kExitUndecided : kExitOk;
}

int run_zeros(const CommonOpts& o) {
    const extball::FunctionSpec spec = o.load();
    extball::FunctionSpec work = spec;
    if (spec.normalize) {
        const auto n = extball::l1_norm(spec, o.tols.quad);
        work = spec.scaled(1.0 / n.value);
        work.normalize = false;
    }
    const std::vector<ZeroRow> rows = zero_table(work, o.tols);
    if (o.format == "csv") {
        emit(zeros_csv(rows), o.out);
    } else if (o.format == "svg") {
        emit(zeros_svg(rows, spec.a), o.out);
    } else {
        ojson j = ojson::array();
        for (const ZeroRow& r : rows)
            j.push_back({{"re_lambda", r.re_lambda},
                         {"im_lambda", r.im_lambda},
                         {"multiplicity", r.multiplicity},
                         {"w_re", r.w_re},
                         {"w_im", r.w_im},
                         {"paired_with_row", r.paired_with_row}});
        emit(j.dump(2), o.out);
    }
    return kExitOk;
}

int run_norm(const CommonOpts& o) {
    const extball::FunctionSpec spec = o.load();
    const auto nq = extball::l1_norm(spec, o.tols.quad);
    ojson j;
    j["l1"] = nq.value;
    j["error_bound"] = nq.error_bound;
    for (int side : {+1, -1}) {
        const char* key = side > 0 ? "weighted_plus" : "weighted_minus";
        if (spec.kind == extball::Generator::Gauss) {
            if (extball::gauss_weighted_sum_diverges(spec, side)) {
                j[key] = "divergent";
            } else {
                // int e^{2a*side*x}|f| equals the L1 norm of the node-shifted spec.
                const extball::FunctionSpec g = extball::weighted_shift_gauss(spec, side);
                j[key] = extball::l1_norm(g, o.tols.quad).value;
            }
        } else {
            const extball::Moments mo = extball::moment_sums(spec, side);
            const double scale = [&] {
                double s = 0.0;
                for (const extball::Term& t : spec.terms(1e-18))
                    s += std::abs(t.c) * std::exp(side * spec.a * t.gamma);
                return s;
            }();
            if (mo.weighted_divergent || mo.moment_divergent ||
                std::abs(mo.moment) > o.tols.pair * scale) {
                j[key] = "divergent";
            } else {
                const extball::FunctionSpec g = extball::reexpanded_secant(spec, side);
                j[key] = extball::l1_norm(g, o.tols.quad).value;
            }
        }
    }
    emit(j.dump(2), o.out);
    return kExitOk;
}

int run_witness(const CommonOpts& o) {
    const extball::FunctionSpec spec = o.load();
    const extball::ClassificationReport rep = extball::classify(spec, o.tols);
    ojson j;
    j["overall"] = rep.overall;
    ojson ws = ojson::array();
    for (const extball::Witness& w : rep.witnesses)
        ws.push_back({{"kind", w.kind},
                      {"parameters", w.params},
                      {"verification", w.verification}});
    j["witnesses"] = ws;
    emit(j.dump(2), o.out);
    return rep.overall == "Undecided" ? kExitUndecided : kExitOk;
}

int run_recover(const CommonOpts& o) {
    // Round trip: evaluate the input as a black-box function, then recover
    // its coefficients through the membership machinery.
    const extball::FunctionSpec spec = o.load();
    const extball::CplxFn f = extball::cplx_evaluator(spec);
    ojson j;
    if (spec.kind == extball::Generator::Gauss) {
        const extball::RecoveredCoeffs rc = extball::membership_v1_gauss(f, spec.a, 1e-10);
        ojson cs = ojson::array();
        for (const auto& kv : rc.coeffs)
            cs.push_back({{"node", kv.first}, {"re", kv.second.real()}, {"im", kv.second.imag()}});
        j["coefficients"] = cs;
        j["resynthesis_residual"] = rc.resynth_residual;
        j["l1"] = rc.l1;
    } else {
        std::vector<double> nodes;
        for (const extball::Term& t : spec.terms(1e-14)) nodes.push_back(t.gamma);
        const extball::RecoveredCoeffs rc =
            extball::membership_v1_secant(f, nodes, spec.a, 1e-10);
        ojson cs = ojson::array();
        for (size_t k = 0; k < nodes.size(); ++k)
            cs.push_back({{"node", nodes[k]},
                          {"re", rc.values[k].real()},
                          {"im", rc.values[k].imag()}});
        j["coefficients"] = cs;
        j["resynthesis_residual"] = rc.resynth_residual;
        j["l1"] = rc.l1;
    }
    emit(j.dump(2), o.out);
    return kExitOk;
}

struct SweepOpts {
    double re_min = -2.0, re_max = 2.0, im_min = -2.0, im_max = 2.0;
    int nx = 11, ny = 11;
};

extball::FunctionSpec f_sigma(cplx sigma) {
    extball::FunctionSpec s;
    s.kind = extball::Generator::Gauss;
    s.a = 1.0;
    s.nodes.integers = true;
    s.coeffs.finite = true;
    s.normalize = true;
    if (sigma == cplx(0.0, 0.0))
        s.coeffs.values = {{1.0, 1.0}};
    else
        s.coeffs.values = {{-1.0, -sigma}, {1.0, 1.0}};
    return s;
}

int run_example_sigma(const CommonOpts& o, const SweepOpts& g) {
    if (g.nx < 1 || g.ny < 1 || g.nx > 512 || g.ny > 512)
        throw extball::ValidationError("sweep resolution must be within 1..512 per axis");
    struct Cell {
        double re, im;
        std::string verdict;
        bool degenerate;
    };
    std::vector<Cell> cells;
    bool undecided = false;
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const double re =
                g.nx == 1 ? g.re_min
                          : g.re_min + (g.re_max - g.re_min) * ix / (g.nx - 1);
            const double im =
                g.ny == 1 ? g.im_min
                          : g.im_min + (g.im_max - g.im_min) * iy / (g.ny - 1);
            const cplx sigma(re, im);
            const bool degenerate = sigma == cplx(0.0, 0.0);
            const extball::ClassificationReport rep =
                extball::classify(f_sigma(sigma), o.tols);
            undecided = undecided || rep.overall == "Undecided";
            cells.push_back({re, im, rep.overall, degenerate});
        }
    }
    if (o.format == "svg") {
        const double cw = 16.0;
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << g.nx * cw
           << "\" height=\"" << g.ny * cw << "\">\n";
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                const Cell& c = cells[static_cast<size_t>(iy) * g.nx + ix];
                const char* fill = c.verdict == "NotExtreme"        ? "#c0392b"
                                   : c.verdict == "ExtremeNotExposed" ? "#2471a3"
                                   : c.verdict == "Exposed"           ? "#1e8449"
                                                                      : "#999999";
                os << "<rect x=\"" << ix * cw << "\" y=\"" << (g.ny - 1 - iy) * cw
                   << "\" width=\"" << cw << "\" height=\"" << cw << "\" fill=\""
                   << fill << "\""
                   << (c.degenerate ? " stroke=\"#f1c40f\" stroke-width=\"2\"" : "")
                   << "/>\n";
            }
        os << "</svg>\n";
        emit(os.str(), o.out);
    } else if (o.format == "json") {
        ojson j = ojson::array();
        for (const Cell& c : cells)
            j.push_back({{"re_sigma", c.re},
                         {"im_sigma", c.im},
                         {"verdict", c.verdict},
                         {"degenerate_single_translate", c.degenerate}});
        emit(j.dump(2), o.out);
    } else {
        std::ostringstream os;
        os.precision(17);
        os << "re_sigma,im_sigma,verdict,degenerate_single_translate\n";
        for (const Cell& c : cells)
            os << c.re << ',' << c.im << ',' << c.verdict << ','
               << (c.degenerate ? 1 : 0) << '\n';
        emit(os.str(), o.out);
    }
    return undecided ? kExitUndecided : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extreme/exposed point certification for Gaussian and "
                 "hyperbolic-secant shift-invariant spaces"};
    app.require_subcommand(1);

    CommonOpts oc, oz, on, ow, or_, os_;
    SweepOpts sweep;

    oc.add(app.add_subcommand("classify", "full condition battery and verdict"));
    oz.add(app.add_subcommand("zeros", "strip zeros of the symbol"));
    on.add(app.add_subcommand("norm", "L1 norm and weighted integrals"));
    ow.add(app.add_subcommand("witness", "witness certificates only"));
    or_.add(app.add_subcommand("recover", "coefficient recovery round trip"));
    CLI::App* sweep_cmd =
        app.add_subcommand("example-sigma", "two-translate family verdict sweep");
    os_.add(sweep_cmd, /*with_input=*/false);
    sweep_cmd->add_option("--re-min", sweep.re_min);
    sweep_cmd->add_option("--re-max", sweep.re_max);
    sweep_cmd->add_option("--im-min", sweep.im_min);
    sweep_cmd->add_option("--im-max", sweep.im_max);
    sweep_cmd->add_option("--nx", sweep.nx)->check(CLI::Range(1, 512));
    sweep_cmd->add_option("--ny", sweep.ny)->check(CLI::Range(1, 512));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitParse;
    }

    try {
        if (app.got_subcommand("classify")) return run_classify(oc);
        if (app.got_subcommand("zeros")) return run_zeros(oz);
        if (app.got_subcommand("norm")) return run_norm(on);
        if (app.got_subcommand("witness")) return run_witness(ow);
        if (app.got_subcommand("recover")) return run_recover(or_);
        if (app.got_subcommand("example-sigma")) return run_example_sigma(os_, sweep);
    } catch (const extball::SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const extball::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitParse;
}
