#include "extball/evaluate.hpp"
#include "extball/errors.hpp"
#include "extball/gauss.hpp"
#include "extball/secant.hpp"

#include <algorithm>
#include <cmath>

namespace extball {

CplxFn cplx_evaluator(const FunctionSpec& spec) {
    if (spec.kind == Generator::Gauss)
        return [spec](cplx z) { return eval_gauss(spec, z); };
    return [spec](cplx z) { return eval_secant(spec, z); };
}

RealFn abs_evaluator(const FunctionSpec& spec) {
    const CplxFn f = cplx_evaluator(spec);
    return [f](double x) { return std::abs(f(cplx(x, 0.0))); };
}

Envelope l1_envelope(const FunctionSpec& spec, double b, double tol,
                     bool cancel_hi, bool cancel_lo) {
    const std::vector<Term> ts = spec.terms(1e-16 * (1.0 + spec.coeff_l1()));
    if (ts.empty()) throw DegenerateInput("empty spec");
    const double a = spec.a;
    const double gmin = ts.front().gamma, gmax = ts.back().gamma;

    Envelope env;
    if (spec.kind == Generator::Gauss) {
        env.kind = Envelope::Kind::Gaussian;
        env.rate_lo = env.rate_hi = a;
    } else {
        env.kind = Envelope::Kind::Exponential;
        env.rate_hi = cancel_hi ? 3.0 * a : a;
        env.rate_lo = cancel_lo ? 3.0 * a : a;
        env.check_samples = !(cancel_hi || cancel_lo);
    }

    auto amp_at = [&](double edge, int dir) {
        // dir=+1: envelope amplitude at the right edge, dir=-1: left edge.
        double s = 0.0;
        const double rate = (dir > 0) ? env.rate_hi : env.rate_lo;
        for (const Term& t : ts) {
            const double u = dir > 0 ? edge - t.gamma : t.gamma - edge;
            s += std::abs(t.c) * (env.kind == Envelope::Kind::Gaussian
                                      ? std::exp(-a * u * u)
                                      : std::exp(-rate * u));
        }
        return s;
    };

    double pad = (spec.kind == Generator::Gauss)
                     ? 2.0 / std::sqrt(a) + std::abs(b) / a
                     : 4.0 / a;
    for (int iter = 0; iter < 400; ++iter) {
        env.x_hi = gmax + pad;
        env.x_lo = gmin - pad;
        env.amp_hi = amp_at(env.x_hi, +1);
        env.amp_lo = amp_at(env.x_lo, -1);
        if (envelope_tail_bound(env, b) < 0.25 * tol) return env;
        pad += (spec.kind == Generator::Gauss) ? 0.5 / std::sqrt(a) : 1.0 / a;
    }
    throw ToleranceNotMet("could not shrink the envelope tail below tolerance");
}

std::vector<double> quad_splits(const FunctionSpec& spec) {
    std::vector<double> out;
    const double a = spec.a;
    std::vector<cplx> poly;
    std::vector<cplx> den;
    if (spec.kind == Generator::Gauss) {
        const GaussSymbol sym = gauss_symbol(spec, 1e-14);
        poly = sym.laurent;
        for (const Term& t : spec.terms(1e-14)) out.push_back(t.gamma);
    } else {
        const SecantSymbol sym = secant_symbol(spec);
        poly = sym.num;
        den = sym.den;
        for (double g : sym.nodes) out.push_back(g);
    }
    if (poly.size() >= 2) {
        // Fringe coefficients far below the peak cannot carry a real zero
        // of any weight; drop them so the companion matrix stays sane.
        double peak = 0.0;
        for (const cplx& c : poly) peak = std::max(peak, std::abs(c));
        while (poly.size() > 1 && std::abs(poly.back()) <= 1e-12 * peak) poly.pop_back();
        while (poly.size() > 1 && std::abs(poly.front()) <= 1e-12 * peak)
            poly.erase(poly.begin());
    }
    if (poly.size() >= 2) {
        RootSet rs;
        try {
            rs = roots_of_polynomial(poly, 1e-7);
        } catch (const std::exception&) {
            // Splits only refine the quadrature panels; fall back to the
            // node breakpoints alone.
            std::sort(out.begin(), out.end());
            return out;
        }
        for (const Root& r : rs.roots) {
            if (!(r.w.real() > 0.0)) continue;
            if (std::abs(r.w.imag()) > 1e-9 * (1.0 + std::abs(r.w))) continue;
            // Secant: skip numerator roots that cancel against poles.
            bool is_pole = false;
            if (!den.empty()) {
                for (const double g : out)
                    if (std::abs(r.w + std::exp(2.0 * a * g)) <
                        1e-6 * (1.0 + std::abs(r.w)))
                        is_pole = true;
            }
            if (!is_pole) out.push_back(std::log(r.w.real()) / (2.0 * a));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

QuadratureResult l1_norm(const FunctionSpec& spec, double tol) {
    return integrate_l1(abs_evaluator(spec), l1_envelope(spec, 0.0, tol), tol,
                        quad_splits(spec));
}

} // namespace extball
