// Acceptance gate: eight end-to-end criteria, one pass/fail line each.
// Exit status is the number of failed criteria.

#include "extball/classify.hpp"
#include "extball/evaluate.hpp"
#include "extball/gauss.hpp"
#include "extball/secant.hpp"
#include "extball/witness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace extball;

namespace {

constexpr double kPi = std::numbers::pi;

FunctionSpec f_sigma(cplx sigma) {
    FunctionSpec s;
    s.kind = Generator::Gauss;
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

FunctionSpec finite_spec(Generator kind, double a, std::vector<Term> ts,
                         bool integers = true) {
    FunctionSpec s;
    s.kind = kind;
    s.a = a;
    s.nodes.integers = integers;
    if (!integers)
        for (const Term& t : ts) s.nodes.points.push_back(t.gamma);
    s.coeffs.finite = true;
    std::sort(ts.begin(), ts.end(),
              [](const Term& l, const Term& r) { return l.gamma < r.gamma; });
    s.coeffs.values = std::move(ts);
    return s;
}

struct Criterion {
    int id;
    bool ok;
    std::string detail;
};

// ---- 1 & 2: sigma sweep and witness soundness -----------------------------

void run_sweep(Criterion& c1, Criterion& c2) {
    int cells = 0, mismatches = 0, witnesses_checked = 0;
    double worst_defect = 0.0, worst_margin = 1e300;
    for (int i = 0; i < 21; ++i) {
        for (int j = 0; j < 21; ++j) {
            const double re = -3.0 + 6.0 * i / 20.0;
            const double im = -3.0 + 6.0 * j / 20.0;
            if (im != 0.0 && std::abs(im) < 1e-3) continue; // ambiguity band
            ++cells;
            const cplx sigma(re, im);
            const ClassificationReport rep = classify(f_sigma(sigma));
            const bool real_nonzero = (im == 0.0 && re != 0.0);
            const std::string want = real_nonzero ? "NotExtreme" : "ExtremeNotExposed";
            if (rep.overall != want) {
                ++mismatches;
                continue;
            }
            if (!real_nonzero) continue;
            // Criterion 2: every NotExtreme verdict carries a sound witness.
            bool found = false;
            for (const Witness& w : rep.witnesses) {
                if (!w.verification.contains("midpoint_defect")) continue;
                found = true;
                const double l1 = w.verification["l1_f"].get<double>();
                const double lp = w.verification["l1_f_plus"].get<double>();
                const double lm = w.verification["l1_f_minus"].get<double>();
                const double dist = w.verification["grid_distance"].get<double>();
                worst_defect = std::max({worst_defect, std::abs(lp - l1),
                                         std::abs(lm - l1)});
                worst_margin = std::min(worst_margin, dist / (1e-6 * l1));
                ++witnesses_checked;
            }
            if (!found) ++mismatches;
        }
    }
    c1 = {1, mismatches == 0,
          "sigma sweep: " + std::to_string(cells) + " cells, " +
              std::to_string(mismatches) + " mismatches"};
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "witness soundness: %d decompositions, worst half-norm defect "
                  "%.3e (<= 1e-8), distance margin %.2fx",
                  witnesses_checked, worst_defect, worst_margin);
    c2 = {2, witnesses_checked > 0 && worst_defect <= 1e-8 && worst_margin > 1.0, buf};
}

// ---- 3: residue round trip -------------------------------------------------

Criterion run_residues() {
    std::mt19937 rng(20260823);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<double> nodes;
        double g = -4.0 + 2.0 * U(rng);
        for (int k = 0; k < n; ++k) {
            nodes.push_back(g);
            g += 0.3 + 1.2 * std::abs(U(rng));
        }
        std::vector<Term> ts;
        for (double gamma : nodes) {
            cplx c(U(rng), U(rng));
            if (std::abs(c) < 0.05) c += cplx(0.3, -0.2);
            ts.push_back({gamma, c});
        }
        const FunctionSpec s = finite_spec(Generator::Sech, 1.0, ts, false);
        const CplxFn f = cplx_evaluator(s);
        const std::vector<cplx> rec = residues_at_base_poles(f, nodes, 1.0);
        for (size_t k = 0; k < nodes.size(); ++k) {
            const double rel = std::abs(rec[k] - ts[k].c) / std::abs(ts[k].c);
            worst = std::max(worst, rel);
        }
    }
    // Single translate: 2ai * Res(H, i pi/2) = 2i * (-i/2) = 1.
    const FunctionSpec h = finite_spec(Generator::Sech, 1.0, {{0.0, 1.0}}, false);
    const std::vector<cplx> c0 =
        residues_at_base_poles(cplx_evaluator(h), {0.0}, 1.0);
    const double single_err = std::abs(c0[0] - cplx(1.0, 0.0));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "residues: worst relative error %.3e (<= 1e-10), single-secant "
                  "defect %.3e (<= 1e-12)",
                  worst, single_err);
    return {3, worst <= 1e-10 && single_err <= 1e-12, buf};
}

// ---- 4: Gaussian symbol round trip ------------------------------------------

Criterion run_gauss_roundtrip() {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int half = static_cast<int>(rng() % 11); // window <= 21 nodes
        std::vector<Term> ts;
        for (int n = -half; n <= half; ++n) {
            cplx c(U(rng), U(rng));
            if (std::abs(c) < 0.05) c = cplx(0.4, 0.1);
            ts.push_back({static_cast<double>(n), c});
        }
        const FunctionSpec s = finite_spec(Generator::Gauss, 1.0, ts);
        const GaussSymbol sym = gauss_symbol(s, 1e-16);
        // Synthesize f from the symbol alone, then pull the coefficients back
        // out through the Laurent sampler, one abscissa per index.
        const double a = s.a;
        const GaussSymbol cap = sym;
        const CplxFn phi = [cap, a](cplx z) {
            const cplx w = std::exp(2.0 * a * z);
            cplx acc = 0.0;
            for (size_t k = 0; k < cap.laurent.size(); ++k)
                acc += cap.laurent[k] *
                       std::pow(w, static_cast<double>(cap.n_lo + static_cast<long>(k)));
            return acc;
        };
        for (const Term& t : ts) {
            const long n = static_cast<long>(t.gamma);
            const cplx an = laurent_coefficients(phi, a, static_cast<double>(n),
                                                 n, n, 128)[0];
            const cplx cn = an * std::exp(a * t.gamma * t.gamma);
            worst = std::max(worst, std::abs(cn - t.c));
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "gauss symbol round trip: max coefficient error %.3e (<= 1e-9)",
                  worst);
    return {4, worst <= 1e-9, buf};
}

// ---- 5: norm oracles ---------------------------------------------------------

Criterion run_norm_oracles() {
    const FunctionSpec g1 = finite_spec(Generator::Gauss, 1.0, {{0.0, 1.0}});
    const FunctionSpec h1 = finite_spec(Generator::Sech, 1.0, {{0.0, 1.0}}, false);
    const double eg = std::abs(l1_norm(g1, 1e-12).value - std::sqrt(kPi));
    const double eh = std::abs(l1_norm(h1, 1e-12).value - kPi / 2.0);
    const QuadratureResult wq =
        integrate_weighted(abs_evaluator(g1), 2.0, l1_envelope(g1, 2.0, 1e-12), 1e-12,
                           quad_splits(g1));
    const double ew = std::abs(wq.value - std::exp(1.0) * std::sqrt(kPi));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "norms: gauss defect %.3e, sech defect %.3e (<= 1e-10), "
                  "weighted defect %.3e (<= 1e-9)",
                  eg, eh, ew);
    return {5, eg <= 1e-10 && eh <= 1e-10 && ew <= 1e-9, buf};
}

// ---- 6: vanishing-moment integrability ---------------------------------------

Criterion run_integrability() {
    const FunctionSpec s =
        finite_spec(Generator::Sech, 1.0, {{0.0, std::exp(1.0)}, {1.0, -1.0}});
    const Moments mo = moment_sums(s, +1);
    const bool moment_zero = !mo.moment_divergent && !mo.weighted_divergent &&
                             std::abs(mo.moment) <= 1e-12 * mo.weighted_l1;
    // The two translates cancel to ~e^{-3x} on the right while each term is
    // ~e^{-x}, so |f| loses ~2x digits of relative accuracy there and e^{2x}
    // amplifies the roundoff. An extended-precision evaluator plus a window
    // that stops before the noise floor keeps the direct quadrature honest.
    const RealFn absf_ld = [](double x) {
        const long double h0 = 0.5L / std::cosh(static_cast<long double>(x));
        const long double h1 = 0.5L / std::cosh(static_cast<long double>(x) - 1.0L);
        return static_cast<double>(
            std::abs(std::exp(1.0L) * h0 - h1));
    };
    const QuadratureResult direct =
        integrate_weighted(absf_ld, 2.0,
                           l1_envelope(s, 2.0, 2e-7, /*cancel_hi=*/true), 2e-7,
                           quad_splits(s));
    const double series = l1_norm(reexpanded_secant(s, +1), 1e-10).value;
    const double gap = std::abs(direct.value - series);

    const FunctionSpec d = finite_spec(Generator::Sech, 1.0, {{0.0, 1.0}, {1.0, 1.0}});
    const double dl1 = l1_norm(d, 1e-10).value;
    const RealFn da = abs_evaluator(d);
    // Plain composite Simpson partial integral of e^{2x}|f| over [-10, 10].
    const int N = 40000;
    double partial = 0.0;
    for (int i = 0; i <= N; ++i) {
        const double x = -10.0 + 20.0 * i / N;
        const double wgt = (i == 0 || i == N) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        partial += wgt * std::exp(2.0 * x) * da(x);
    }
    partial *= (20.0 / N) / 3.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "integrability: moment %.2e, direct-vs-series gap %.3e (<= 1e-6), "
                  "divergent partial %.2f > %.2f",
                  std::abs(mo.moment), gap, partial, 10.0 * dl1);
    return {6, moment_zero && gap <= 1e-6 && partial > 10.0 * dl1, buf};
}

// ---- 7: brute-force extremality probe -----------------------------------------

Criterion run_brute_force() {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> U(-1.0, 1.0);

    std::vector<FunctionSpec> extreme;
    for (double im : {0.4, 0.9, 1.6, 2.5})
        extreme.push_back(f_sigma(cplx(0.0, im)));
    for (double re : {0.7, -1.2})
        extreme.push_back(f_sigma(cplx(re, re)));
    extreme.push_back(f_sigma(0.0));
    extreme.push_back(finite_spec(Generator::Sech, 1.0, {{0.0, 1.0}}, false));
    extreme.push_back(
        finite_spec(Generator::Sech, 1.0, {{-0.7, 0.5}, {0.6, cplx(0.2, 0.4)}}, false));
    {
        FunctionSpec s = finite_spec(Generator::Sech, 1.0,
                                     {{0.0, std::exp(1.0)}, {1.0, -1.0}}, false);
        s.normalize = true;
        extreme.push_back(s);
    }

    int decompositions = 0;
    for (FunctionSpec inst : extreme) {
        inst.normalize = false;
        const double base = l1_norm(inst, 1e-10).value;
        const FunctionSpec f = inst.scaled(1.0 / base);
        for (int trial = 0; trial < 500; ++trial) {
            FunctionSpec plus = f, minus = f;
            const int nterms = 1 + static_cast<int>(rng() % 5);
            for (int k = 0; k < nterms; ++k) {
                double gamma;
                if (f.kind == Generator::Gauss) {
                    gamma = static_cast<double>(static_cast<int>(rng() % 7) - 3);
                } else {
                    const std::vector<Term>& ts = f.coeffs.values;
                    gamma = ts[rng() % ts.size()].gamma;
                }
                const cplx dc = 0.05 * cplx(U(rng), U(rng));
                bool merged = false;
                for (Term& t : plus.coeffs.values)
                    if (t.gamma == gamma) { t.c += dc; merged = true; }
                for (Term& t : minus.coeffs.values)
                    if (t.gamma == gamma) t.c -= dc;
                if (!merged && f.kind == Generator::Gauss) {
                    plus.coeffs.values.push_back({gamma, dc});
                    minus.coeffs.values.push_back({gamma, -dc});
                    std::sort(plus.coeffs.values.begin(), plus.coeffs.values.end(),
                              [](const Term& l, const Term& r) { return l.gamma < r.gamma; });
                    std::sort(minus.coeffs.values.begin(), minus.coeffs.values.end(),
                              [](const Term& l, const Term& r) { return l.gamma < r.gamma; });
                }
            }
            // ||g||_1 >= K ||dc||_1 is awkward to certify cheaply; bound it from
            // below by the l1 coefficient gap times the generator norm factor and
            // skip only genuinely tiny perturbations.
            double coeff_gap = 0.0;
            for (size_t k = 0; k < plus.coeffs.values.size(); ++k) {
                cplx cm = 0.0;
                for (const Term& t : minus.coeffs.values)
                    if (t.gamma == plus.coeffs.values[k].gamma) cm = t.c;
                coeff_gap += std::abs(plus.coeffs.values[k].c - cm);
            }
            if (coeff_gap < 1e-2) continue;
            const double np = l1_norm(plus, 1e-7).value;
            if (np > 1.0 + 1e-6) continue;
            const double nm = l1_norm(minus, 1e-7).value;
            if (nm > 1.0 + 1e-6) continue;
            // Near the boundary: re-check at certification accuracy.
            if (l1_norm(plus, 1e-10).value <= 1.0 + 1e-9 &&
                l1_norm(minus, 1e-10).value <= 1.0 + 1e-9)
                ++decompositions;
        }
    }

    int witness_failures = 0, not_extreme = 0;
    for (double re : {-2.8, -2.0, -1.3, -0.6, 0.3, 0.9, 1.4, 2.1, 2.6, 3.0}) {
        const ClassificationReport rep = classify(f_sigma(cplx(re, 0.0)));
        if (rep.overall != "NotExtreme") {
            ++witness_failures;
            continue;
        }
        ++not_extreme;
        bool ok = false;
        for (const Witness& w : rep.witnesses)
            if (w.verification.contains("midpoint_defect")) ok = true;
        if (!ok) ++witness_failures;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "brute force: %zu extreme instances x 500 trials, %d decompositions "
                  "found; %d not-extreme instances, %d witness failures",
                  extreme.size(), decompositions, not_extreme, witness_failures);
    return {7, decompositions == 0 && not_extreme == 10 && witness_failures == 0, buf};
}

// ---- 8: antiperiodicity and growth envelope ------------------------------------

Criterion run_invariants() {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> UX(-6.0, 6.0);
    std::uniform_real_distribution<double> UY(-5.0, 5.0);

    std::vector<FunctionSpec> gauss_corpus{
        f_sigma(cplx(0.0, 1.0)), f_sigma(cplx(2.0, 0.0)), f_sigma(cplx(-0.5, 0.5)),
        finite_spec(Generator::Gauss, 1.0,
                    {{-2.0, cplx(0.3, -0.1)}, {0.0, 1.0}, {3.0, cplx(-0.2, 0.7)}})};
    std::vector<FunctionSpec> sech_corpus{
        finite_spec(Generator::Sech, 1.0, {{0.0, 1.0}}, false),
        finite_spec(Generator::Sech, 1.0, {{0.0, std::exp(1.0)}, {1.0, -1.0}}),
        finite_spec(Generator::Sech, 1.0,
                    {{-1.1, cplx(0.4, 0.2)}, {0.3, 1.0}, {1.9, cplx(0.0, -0.6)}},
                    false)};

    double worst_anti = 0.0, worst_env = 0.0;
    for (const FunctionSpec& s : sech_corpus) {
        const CplxFn f = cplx_evaluator(s);
        PoleLattice pl{s.a, {}};
        for (const Term& t : s.terms(1e-16)) pl.nodes.push_back(t.gamma);
        int done = 0;
        while (done < 50) {
            const cplx z(UX(rng), UY(rng));
            if (pl.distance(z) < 1e-2 || pl.distance(z + cplx(0.0, kPi / s.a)) < 1e-2)
                continue;
            const cplx v1 = f(z), v2 = f(z + cplx(0.0, kPi / s.a));
            worst_anti = std::max(worst_anti, std::abs(v1 + v2) / (1.0 + std::abs(v1)));
            ++done;
        }
    }
    for (const FunctionSpec& s : gauss_corpus) {
        const CplxFn f = cplx_evaluator(s);
        // S(a) = sup_x sum_n e^{-a(x-n)^2}, periodic in x with period 1.
        double S = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double x = i / 200.0;
            double acc = 0.0;
            for (int n = -30; n <= 30; ++n) acc += std::exp(-s.a * (x - n) * (x - n));
            S = std::max(S, acc);
        }
        const double cl1 = s.coeff_l1();
        for (int k = 0; k < 50; ++k) {
            const cplx z(UX(rng), UY(rng));
            const double bound =
                1.0001 * cl1 * S * std::exp(s.a * z.imag() * z.imag());
            worst_env = std::max(worst_env, std::abs(f(z)) / bound);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "invariants: antiperiodicity defect %.3e (<= 1e-12), envelope "
                  "ratio %.4f (<= 1)",
                  worst_anti, worst_env);
    return {8, worst_anti <= 1e-12 && worst_env <= 1.0, buf};
}

} // namespace

int main() {
    std::vector<Criterion> cs(8);
    run_sweep(cs[0], cs[1]);
    cs[2] = run_residues();
    cs[3] = run_gauss_roundtrip();
    cs[4] = run_norm_oracles();
    cs[5] = run_integrability();
    cs[6] = run_brute_force();
    cs[7] = run_invariants();

    int failed = 0;
    for (const Criterion& c : cs) {
        std::printf("criterion %d: %s — %s\n", c.id, c.ok ? "PASS" : "FAIL",
                    c.detail.c_str());
        if (!c.ok) ++failed;
    }
    return failed;
}
