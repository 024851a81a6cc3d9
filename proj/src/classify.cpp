#include "extball/classify.hpp"
#include "extball/errors.hpp"
#include "extball/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace extball {

namespace {

using ojson = nlohmann::ordered_json;

// Roots closer to the real axis than this (relative) are treated as real.
constexpr double kAxisSnap = 1e-9;

bool trusted(const SymbolZeros& sz, cplx w) {
    if (sz.truncation_bound == 0.0) return true;
    const double r = std::abs(w);
    return r >= sz.r_min && r <= sz.r_max;
}

ojson zero_entry(const char* type, cplx w, int mult, double a) {
    const cplx lam = strip_zero(w, a);
    return {{"type", type},
            {"w_re", w.real()},
            {"w_im", w.imag()},
            {"lambda_re", lam.real()},
            {"lambda_im", lam.imag()},
            {"multiplicity", mult}};
}

std::string join(const std::vector<std::string>& rs) {
    std::string out;
    for (const std::string& r : rs) {
        if (!out.empty()) out += "; ";
        out += r;
    }
    return out;
}

} // namespace

std::string to_string(Status s) {
    switch (s) {
        case Status::Pass: return "Pass";
        case Status::Fail: return "Fail";
        case Status::Undecided: return "Undecided";
    }
    return "Undecided";
}

ojson ConditionVerdict::to_json() const {
    ojson j;
    j["status"] = to_string(status);
    j["evidence"] = evidence.is_null() ? ojson::object() : evidence;
    j["tolerance"] = tolerance;
    if (status == Status::Undecided) j["reason"] = reason;
    return j;
}

cplx strip_zero(cplx w, double a) {
    double arg = std::atan2(w.imag(), w.real());
    if (arg <= 0.0) arg += 2.0 * std::numbers::pi;
    return cplx(std::log(std::abs(w)), arg) / (2.0 * a);
}

SymbolZeros symbol_zeros(const GaussSymbol& sym, double tol_root) {
    SymbolZeros sz;
    sz.a = sym.a;
    sz.r_min = sym.r_min;
    sz.r_max = sym.r_max;
    sz.truncation_bound = sym.truncation_bound;

    // The Laurent coefficients a_n = c_n e^{-a n^2} are bell shaped and can
    // span hundreds of orders of magnitude; fringes far below the peak
    // overwhelm the companion matrix without moving any root inside a
    // re-certified annulus. Trim them and shrink the annulus accordingly.
    std::vector<cplx> poly = sym.laurent;
    double peak = 0.0;
    for (const cplx& v : poly) peak = std::max(peak, std::abs(v));
    size_t b = 0, e = poly.size();
    while (e - b > 1 && std::abs(poly[e - 1]) <= 1e-12 * peak) --e;
    while (e - b > 1 && std::abs(poly[b]) <= 1e-12 * peak) ++b;
    if (b > 0 || e < poly.size()) {
        const long W = std::max(std::labs(sym.n_lo),
                                std::labs(sym.n_lo + static_cast<long>(poly.size()) - 1));
        const double L = std::min(700.0, 2.0 * sym.a * (static_cast<double>(W) + 6.0));
        double lr_min = std::numeric_limits<double>::quiet_NaN();
        double lr_max = std::numeric_limits<double>::quiet_NaN();
        const int grid = 400;
        for (int i = 0; i <= grid; ++i) {
            const double logr = -L + 2.0 * L * i / grid;
            double trimmed = 0.0, retained = 0.0;
            for (size_t k = 0; k < poly.size(); ++k) {
                const double n = static_cast<double>(sym.n_lo + static_cast<long>(k));
                const double m = std::abs(poly[k]) * std::exp(n * logr);
                if (k >= b && k < e)
                    retained = std::max(retained, m);
                else
                    trimmed += m;
            }
            if (trimmed < 1e-10 * retained) {
                if (std::isnan(lr_min)) lr_min = logr;
                lr_max = logr;
            }
        }
        if (std::isnan(lr_min)) {
            sz.r_min = sz.r_max = 1.0;
        } else {
            sz.r_min = std::max(sz.r_min, std::exp(lr_min));
            sz.r_max = std::min(sz.r_max, std::exp(lr_max));
        }
        double trimmed_mass = 0.0;
        for (size_t k = 0; k < poly.size(); ++k)
            if (k < b || k >= e) trimmed_mass += std::abs(poly[k]);
        sz.truncation_bound = std::max(sz.truncation_bound, trimmed_mass);
        poly = std::vector<cplx>(poly.begin() + static_cast<long>(b),
                                 poly.begin() + static_cast<long>(e));
    }

    if (poly.size() >= 2) {
        try {
            const RootSet rs = roots_of_polynomial(poly, tol_root);
            for (const Root& r : rs.roots)
                if (std::abs(r.w) > 0.0) sz.roots.push_back(r);
        } catch (const std::exception&) {
            sz.roots.clear();
            sz.solve_failed = true;
        }
    }
    return sz;
}

SymbolZeros symbol_zeros(const SecantSymbol& sym, double tol_root) {
    SymbolZeros sz;
    sz.a = sym.a;
    sz.r_min = sym.r_min;
    sz.r_max = sym.r_max;
    sz.truncation_bound = sym.truncation_bound;
    if (sym.num.size() >= 2) {
        RootSet rs;
        try {
            rs = roots_of_polynomial(sym.num, tol_root);
        } catch (const std::exception&) {
            sz.solve_failed = true;
            return sz;
        }
        for (Root r : rs.roots) {
            if (!(std::abs(r.w) > 0.0)) continue;
            // A numerator root sitting on a pole v = -e^{2a gamma} cancels
            // one order of that pole; only the excess is a zero of f.
            for (double g : sym.nodes) {
                const double pv = std::exp(2.0 * sym.a * g);
                if (std::abs(r.w + pv) <= 1e-6 * (1.0 + pv)) {
                    --r.multiplicity;
                    break;
                }
            }
            if (r.multiplicity >= 1) sz.roots.push_back(r);
        }
    }
    return sz;
}

ConditionVerdict check_paired_zeros(const SymbolZeros& sz, double tol_pair,
                                    double tol_strip) {
    ConditionVerdict v;
    v.tolerance = tol_pair;
    if (sz.solve_failed) {
        v.status = Status::Undecided;
        v.reason = "symbol root solve did not certify the zero set";
        return v;
    }
    std::vector<ojson> fails;
    std::vector<std::string> reasons;

    for (const Root& r : sz.roots) {
        const double rel = 1.0 + std::abs(r.w);
        const double im = r.w.imag(), re = r.w.real();
        if (std::abs(im) <= kAxisSnap * rel) {
            if (re < 0.0) { // midline zero, self-paired
                if (trusted(sz, r.w))
                    fails.push_back(
                        zero_entry("negative_real_root", cplx(re, 0.0),
                                   r.multiplicity, sz.a));
                else
                    reasons.push_back("negative-real root outside the certified annulus");
            }
            continue; // positive-real roots lie on the strip boundary
        }
        bool paired = false;
        for (const Root& o : sz.roots) {
            if (&o == &r) continue;
            if (std::abs(o.w - std::conj(r.w)) <= tol_pair * rel) paired = true;
        }
        if (paired) {
            if (im < 0.0) continue; // one report per pair
            if (trusted(sz, r.w))
                fails.push_back(zero_entry("conjugate_pair", r.w, r.multiplicity, sz.a));
            else
                reasons.push_back("conjugate pair outside the certified annulus");
            continue;
        }
        if (std::abs(std::atan2(im, re)) < tol_strip)
            reasons.push_back("zero inside the strip-boundary guard band");
        else if (re < 0.0 && std::abs(im) <= tol_pair * rel)
            reasons.push_back("unpaired zero within pairing tolerance of the strip midline");
    }

    if (!fails.empty()) {
        v.status = Status::Fail;
        v.evidence = ojson{{"zeros", fails}};
    } else if (!reasons.empty()) {
        v.status = Status::Undecided;
        v.reason = join(reasons);
    } else if (sz.truncation_bound > 0.0) {
        v.status = Status::Undecided;
        v.reason = "parametric truncation: zeros outside the certified annulus not excluded";
        v.evidence = ojson{{"certified_annulus", {sz.r_min, sz.r_max}}};
    } else {
        v.status = Status::Pass;
        v.evidence = ojson{{"roots_checked", sz.roots.size()}};
    }
    return v;
}

ConditionVerdict check_nonzero_coeffs(const FunctionSpec& spec, double tol) {
    if (spec.kind != Generator::Sech)
        throw ValidationError("coefficient condition applies to secant specs only");
    ConditionVerdict v;
    v.tolerance = tol;

    const std::vector<Term> ts = spec.terms(1e-14);
    double cmax = 0.0, sigma_prime = 0.0;
    for (const Term& t : ts)
        if (std::abs(t.c) > cmax) {
            cmax = std::abs(t.c);
            sigma_prime = t.gamma;
        }

    auto fail_at = [&](double gamma, const char* note) {
        v.status = Status::Fail;
        v.evidence = ojson{{"gamma", gamma}, {"sigma_prime", sigma_prime}, {"note", note}};
    };

    if (spec.nodes.integers) {
        if (spec.coeffs.finite) {
            // The declared node set is all of Z: any integer outside the
            // finite support (or with a vanishing value inside it) offends.
            const long lo = static_cast<long>(ts.front().gamma);
            const long hi = static_cast<long>(ts.back().gamma);
            for (long n = lo; n <= hi; ++n) {
                cplx c = 0.0;
                for (const Term& t : ts)
                    if (static_cast<long>(t.gamma) == n) c = t.c;
                if (std::abs(c) <= tol * cmax) {
                    fail_at(static_cast<double>(n), "vanishing coefficient on the integer lattice");
                    return v;
                }
            }
            fail_at(static_cast<double>(lo - 1),
                    "finite support on the integer lattice leaves zero coefficients");
            return v;
        }
        // The tail family is nonvanishing by construction wherever its
        // scale is nonzero; only explicit overrides can kill a coefficient.
        const TailModel& tm = *spec.coeffs.tail;
        for (const auto& kv : tm.overrides) {
            if (std::abs(kv.second) <= tol * cmax) {
                fail_at(static_cast<double>(kv.first),
                        "vanishing override on the integer lattice");
                return v;
            }
        }
        const NodeWindow w = effective_support(spec, 1e-14);
        if (tm.scale_plus == 0.0) {
            fail_at(static_cast<double>(w.hi + 1), "tail scale is zero on the positive side");
            return v;
        }
        if (tm.scale_minus == 0.0) {
            fail_at(static_cast<double>(w.lo - 1), "tail scale is zero on the negative side");
            return v;
        }
    } else {
        for (double p : spec.nodes.points) {
            cplx c = 0.0;
            for (const Term& t : ts)
                if (t.gamma == p) c = t.c;
            if (std::abs(c) <= tol * cmax) {
                fail_at(p, "vanishing coefficient on a declared node");
                return v;
            }
        }
    }
    v.status = Status::Pass;
    v.evidence = ojson{{"min_abs_coeff_ratio",
                        [&] {
                            double m = std::numeric_limits<double>::infinity();
                            for (const Term& t : ts) m = std::min(m, std::abs(t.c) / cmax);
                            return m;
                        }()}};
    return v;
}

ConditionVerdict check_real_double_zero(const SymbolZeros& sz, double tol_strip) {
    ConditionVerdict v;
    v.tolerance = tol_strip;
    if (sz.solve_failed) {
        v.status = Status::Undecided;
        v.reason = "symbol root solve did not certify the zero set";
        return v;
    }
    std::vector<ojson> fails;
    std::vector<std::string> reasons;

    for (const Root& r : sz.roots) {
        if (r.multiplicity < 2) continue;
        const double rel = 1.0 + std::abs(r.w);
        const double im = r.w.imag(), re = r.w.real();
        if (re > 0.0 && std::abs(im) <= kAxisSnap * rel) {
            if (trusted(sz, r.w)) {
                ojson e = zero_entry("real_double_zero", cplx(re, 0.0),
                                     r.multiplicity, sz.a);
                e["lambda_re"] = std::log(re) / (2.0 * sz.a);
                e["lambda_im"] = 0.0;
                fails.push_back(e);
            } else {
                reasons.push_back("real multiple zero outside the certified annulus");
            }
        } else if (re > 0.0 && std::abs(std::atan2(im, re)) < tol_strip) {
            reasons.push_back("multiple zero inside the strip-boundary guard band");
        }
    }

    if (!fails.empty()) {
        v.status = Status::Fail;
        v.evidence = ojson{{"zeros", fails}};
    } else if (!reasons.empty()) {
        v.status = Status::Undecided;
        v.reason = join(reasons);
    } else if (sz.truncation_bound > 0.0) {
        v.status = Status::Undecided;
        v.reason = "parametric truncation: zeros outside the certified annulus not excluded";
    } else {
        v.status = Status::Pass;
        v.evidence = ojson{{"roots_checked", sz.roots.size()}};
    }
    return v;
}

ConditionVerdict check_divergence(const FunctionSpec& spec, int side, double tol) {
    if (side != 1 && side != -1) throw ValidationError("side must be +1 or -1");
    ConditionVerdict v;
    v.tolerance = tol;

    if (spec.kind == Generator::Gauss) {
        if (spec.coeffs.finite) {
            v.status = Status::Fail;
            v.evidence = ojson{{"side", side},
                               {"mechanism", "finite coefficient model: weighted sum converges"}};
        } else if (gauss_weighted_sum_diverges(spec, side)) {
            v.status = Status::Pass;
            v.evidence = ojson{{"side", side},
                               {"mechanism", "tail model certifies weighted-sum divergence"}};
        } else {
            v.status = Status::Fail;
            v.evidence = ojson{{"side", side},
                               {"mechanism", "tail model certifies weighted-sum convergence"}};
        }
        return v;
    }

    const Moments mo = moment_sums(spec, side);
    if (mo.moment_divergent || mo.weighted_divergent) {
        v.status = Status::Pass;
        v.evidence = ojson{{"side", side}, {"mechanism", "weighted l1 sum diverges"}};
        return v;
    }
    double scale = 0.0;
    for (const Term& t : spec.terms(1e-18))
        scale += std::abs(t.c) * std::exp(side * spec.a * t.gamma);
    if (std::abs(mo.moment) > tol * scale) {
        v.status = Status::Pass;
        v.evidence = ojson{{"side", side},
                           {"mechanism", "nonzero moment"},
                           {"moment_re", mo.moment.real()},
                           {"moment_im", mo.moment.imag()}};
    } else {
        v.status = Status::Fail;
        v.evidence = ojson{{"side", side},
                           {"mechanism", "vanishing moment and finite weighted l1"},
                           {"moment_re", mo.moment.real()},
                           {"moment_im", mo.moment.imag()},
                           {"weighted_l1", mo.weighted_l1}};
    }
    return v;
}

ConditionVerdict check_norm(const FunctionSpec& spec, double tol, double& norm_out) {
    const QuadratureResult nq = l1_norm(spec, tol);
    norm_out = nq.value;
    ConditionVerdict v;
    v.tolerance = tol;
    if (spec.normalize) {
        if (!(nq.value > 1e-300)) throw DegenerateInput("cannot normalize the zero function");
        v.status = Status::Pass;
        v.evidence = ojson{{"normalizing_constant", 1.0 / nq.value}, {"raw_l1", nq.value}};
    } else {
        v.status = (std::abs(nq.value - 1.0) <= tol + nq.error_bound) ? Status::Pass
                                                                      : Status::Fail;
        v.evidence = ojson{{"l1", nq.value}, {"error_bound", nq.error_bound}};
    }
    return v;
}

namespace {

// Relative residual of g(x) = e^{2a*side*x} f(x) on a 64-point grid.
double modulation_identity_residual(const FunctionSpec& f, const FunctionSpec& g,
                                    int side) {
    const CplxFn fe = cplx_evaluator(f);
    const CplxFn ge = cplx_evaluator(g);
    const std::vector<Term> ts = g.terms(1e-14);
    const double lo = ts.front().gamma - 2.0, hi = ts.back().gamma + 2.0;
    double scale = 0.0, worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double x = lo + (hi - lo) * (i + 0.41) / 64.0;
        const cplx rhs = std::exp(2.0 * side * f.a * x) * fe(cplx(x, 0.0));
        const cplx lhs = ge(cplx(x, 0.0));
        scale = std::max(scale, std::abs(rhs));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst / std::max(scale, 1e-300);
}

} // namespace

ojson ClassificationReport::to_json() const {
    ojson j;
    j["overall"] = overall;
    j["l1_norm"] = l1_norm;
    j["l1_error_bound"] = l1_error_bound;
    j["normalizing_constant"] = normalizing_constant;
    if (std::isfinite(annulus_hi))
        j["certified_annulus"] = {annulus_lo, annulus_hi};
    else
        j["certified_annulus"] = {annulus_lo, "unbounded"};
    j["finite_node_set_reading"] = finite_nodes;
    j["tolerances"] = ojson{{"quad", tols.quad},
                            {"root", tols.root},
                            {"pair", tols.pair},
                            {"strip", tols.strip}};
    j["conditions"] = conditions;
    ojson ws = ojson::array();
    for (const Witness& w : witnesses)
        ws.push_back(ojson{{"kind", w.kind},
                           {"parameters", w.params},
                           {"verification", w.verification}});
    j["witnesses"] = ws;
    return j;
}

ClassificationReport classify(const FunctionSpec& spec, const Tolerances& tols) {
    ClassificationReport rep;
    rep.tols = tols;

    double raw_norm = 0.0;
    ConditionVerdict norm_v = check_norm(spec, tols.quad, raw_norm);
    FunctionSpec work = spec;
    if (spec.normalize) {
        rep.normalizing_constant = 1.0 / raw_norm;
        work = spec.scaled(rep.normalizing_constant);
        work.normalize = false;
        rep.l1_norm = 1.0;
    } else {
        rep.l1_norm = raw_norm;
    }
    rep.l1_error_bound = norm_v.evidence.contains("error_bound")
                             ? norm_v.evidence["error_bound"].get<double>()
                             : 0.0;
    rep.finite_nodes = (spec.kind == Generator::Sech && !spec.nodes.integers);

    const bool is_gauss = (spec.kind == Generator::Gauss);
    SymbolZeros sz = is_gauss ? symbol_zeros(gauss_symbol(work, 1e-14), tols.root)
                              : symbol_zeros(secant_symbol(work), tols.root);
    rep.annulus_lo = sz.r_min;
    rep.annulus_hi = sz.r_max;

    ConditionVerdict paired = check_paired_zeros(sz, tols.pair, tols.strip);
    ConditionVerdict nonzero;
    if (!is_gauss) nonzero = check_nonzero_coeffs(work, tols.pair);
    ConditionVerdict dz = check_real_double_zero(sz, tols.strip);
    ConditionVerdict div_p = check_divergence(work, +1, tols.pair);
    ConditionVerdict div_m = check_divergence(work, -1, tols.pair);

    const CplxFn f = cplx_evaluator(work);
    std::vector<double> mem_nodes;
    if (!is_gauss) {
        const SecantSymbol ssym = secant_symbol(work);
        mem_nodes = ssym.nodes;
    }

    auto attach = [&](ConditionVerdict& v, auto&& builder) {
        if (v.status != Status::Fail) return;
        try {
            rep.witnesses.push_back(builder());
        } catch (const std::exception& e) {
            v.status = Status::Undecided;
            v.reason = std::string("witness construction failed: ") + e.what();
        }
    };

    attach(paired, [&] {
        const ojson& ev = paired.evidence["zeros"][0];
        const cplx lambda(ev["lambda_re"].get<double>(), ev["lambda_im"].get<double>());
        const bool negreal = (ev["type"] == "negative_real_root");
        Multiplier tau = negreal ? build_tau_negative_real(lambda, work.a)
                                 : build_tau_paired(lambda, work.a);
        CplxFn q = [f, &tau](cplx z) { return f(z) * tau.fn(z); };
        const RecoveredCoeffs rc =
            is_gauss ? membership_v1_gauss(q, work.a, 1e-10)
                     : membership_v1_secant(q, mem_nodes, work.a, 1e-10);
        return verify_midpoint_decomposition(
            work, tau, negreal ? "NegativeRealTau" : "PairedZeroTau",
            ojson{{"lambda_re", lambda.real()}, {"lambda_im", lambda.imag()}},
            rc.resynth_residual, rc.l1, tols.quad);
    });

    if (!is_gauss)
        attach(nonzero, [&] {
            const double sigma = nonzero.evidence["gamma"].get<double>();
            const double sigma_p = nonzero.evidence["sigma_prime"].get<double>();
            Multiplier tau = build_ratio_tau(sigma, sigma_p, work.a);
            CplxFn q = [f, &tau](cplx z) { return f(z) * tau.fn(z); };
            std::vector<double> nodes = mem_nodes;
            if (std::find(nodes.begin(), nodes.end(), sigma) == nodes.end())
                nodes.push_back(sigma);
            std::sort(nodes.begin(), nodes.end());
            const RecoveredCoeffs rc = membership_v1_secant(q, nodes, work.a, 1e-10);
            return verify_midpoint_decomposition(
                work, tau, "ZeroCoeffRatio",
                ojson{{"sigma", sigma}, {"sigma_prime", sigma_p}},
                rc.resynth_residual, rc.l1, tols.quad);
        });

    attach(dz, [&] {
        const ojson& ev = dz.evidence["zeros"][0];
        const double lam = ev["lambda_re"].get<double>();
        Multiplier h = build_h_double_zero(lam, work.a);
        CplxFn q = [f, &h](cplx z) { return f(z) * h.fn(z); };
        const RecoveredCoeffs rc =
            is_gauss ? membership_v1_gauss(q, work.a, 1e-10)
                     : membership_v1_secant(q, mem_nodes, work.a, 1e-10);
        Witness w;
        w.kind = "DoubleZeroH";
        w.params = ojson{{"lambda", lam}};
        w.verification = ojson{{"resynthesis_residual", rc.resynth_residual},
                               {"recovered_l1", rc.l1}};
        return w;
    });

    auto modulation_witness = [&](int side) {
        Witness w;
        w.kind = "ModulationH";
        w.params = ojson{{"side", side}};
        double resid;
        if (is_gauss) {
            const FunctionSpec g = weighted_shift_gauss(work, side);
            resid = modulation_identity_residual(work, g, side);
            w.verification = ojson{{"identity_residual", resid},
                                   {"shifted_terms", g.coeffs.values.size()}};
        } else {
            const Moments mo = moment_sums(work, side);
            const FunctionSpec g = reexpanded_secant(work, side);
            resid = modulation_identity_residual(work, g, side);
            w.verification = ojson{{"identity_residual", resid},
                                   {"moment_re", mo.moment.real()},
                                   {"moment_im", mo.moment.imag()},
                                   {"weighted_l1", mo.weighted_l1}};
        }
        if (resid > 1e-8)
            throw WitnessError("modulation identity residual above tolerance");
        return w;
    };
    attach(div_p, [&] { return modulation_witness(+1); });
    attach(div_m, [&] { return modulation_witness(-1); });

    rep.conditions = ojson::object();
    rep.conditions["norm"] = norm_v.to_json();
    rep.conditions["paired_zeros"] = paired.to_json();
    if (!is_gauss) rep.conditions["nonzero_coeffs"] = nonzero.to_json();
    rep.conditions["real_double_zero"] = dz.to_json();
    rep.conditions["divergence_plus"] = div_p.to_json();
    rep.conditions["divergence_minus"] = div_m.to_json();

    std::vector<Status> extremality{paired.status};
    if (!is_gauss) extremality.push_back(nonzero.status);
    const std::vector<Status> exposedness{dz.status, div_p.status, div_m.status};

    auto any = [](const std::vector<Status>& v, Status s) {
        return std::find(v.begin(), v.end(), s) != v.end();
    };
    if (norm_v.status == Status::Fail)
        rep.overall = "NotNormalized";
    else if (any(extremality, Status::Fail))
        rep.overall = "NotExtreme";
    else if (any(extremality, Status::Undecided))
        rep.overall = "Undecided";
    else if (any(exposedness, Status::Fail))
        rep.overall = "ExtremeNotExposed";
    else if (any(exposedness, Status::Undecided))
        rep.overall = "Undecided";
    else
        rep.overall = "Exposed";
    return rep;
}

} // namespace extball
