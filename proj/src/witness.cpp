#include "extball/witness.hpp"
#include "extball/errors.hpp"
#include "extball/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace extball {

namespace {
constexpr double kPi = std::numbers::pi;
}

Multiplier build_tau_paired(cplx lambda, double a) {
    const double im = lambda.imag();
    if (!(im > 0.0 && im < kPi / a))
        throw WitnessError("lambda outside the fundamental strip");
    if (std::abs(im - 0.5 * kPi / a) < 1e-8)
        throw WitnessError("midline lambda: use the negative-real form");
    const cplx A = std::exp(2.0 * a * lambda);
    const cplx Ab = std::conj(A);
    Multiplier m;
    m.fn = [A, Ab, a](cplx z) {
        const cplx w = std::exp(2.0 * a * z);
        return 1.0 / ((w - A) * (w - Ab));
    };
    m.limit_plus = 0.0;
    m.limit_minus = 1.0 / std::norm(A);
    return m;
}

Multiplier build_tau_negative_real(cplx lambda, double a) {
    const cplx A = std::exp(2.0 * a * lambda);
    if (!(A.real() < 0.0) || std::abs(A.imag()) > 1e-8 * std::abs(A))
        throw WitnessError("e^{2a lambda} is not negative real");
    const double B = std::abs(A);
    Multiplier m;
    m.fn = [B, a](cplx z) { return 1.0 / (std::exp(2.0 * a * z) + B); };
    m.limit_plus = 0.0;
    m.limit_minus = 1.0 / B;
    return m;
}

Multiplier build_ratio_tau(double sigma, double sigma_prime, double a) {
    if (sigma == sigma_prime)
        throw WitnessError("ratio witness requires distinct nodes");
    Multiplier m;
    m.fn = [sigma, sigma_prime, a](cplx z) {
        return std::cosh(a * (z - sigma_prime)) / std::cosh(a * (z - sigma));
    };
    m.limit_plus = std::exp(a * (sigma - sigma_prime));
    m.limit_minus = std::exp(-a * (sigma - sigma_prime));
    return m;
}

Multiplier build_h_double_zero(double lambda, double a) {
    const double B = std::exp(2.0 * a * lambda);
    Multiplier m;
    m.fn = [B, a](cplx z) {
        const cplx d = std::exp(2.0 * a * z) - B;
        return 1.0 / (d * d);
    };
    m.limit_plus = 0.0;
    m.limit_minus = 1.0 / (B * B);
    return m;
}

Multiplier build_h_modulation(int side, double a) {
    if (side != 1 && side != -1) throw WitnessError("side must be +1 or -1");
    Multiplier m;
    m.fn = [side, a](cplx z) { return std::exp(2.0 * a * static_cast<double>(side) * z); };
    m.limit_plus = side > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    m.limit_minus = side > 0 ? 0.0 : std::numeric_limits<double>::infinity();
    return m;
}

Witness verify_midpoint_decomposition(const FunctionSpec& unit_spec,
                                      const Multiplier& tau,
                                      const std::string& kind,
                                      nlohmann::ordered_json params,
                                      double membership_residual,
                                      double membership_l1,
                                      double tol) {
    const RealFn absf = abs_evaluator(unit_spec);
    auto tau_r = [&](double x) { return tau.fn(cplx(x, 0.0)).real(); };

    // tau must be real on the line.
    for (int i = 0; i < 20; ++i) {
        const double x = -5.0 + 10.5 * i / 19.0;
        const cplx v = tau.fn(cplx(x, 0.0));
        if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v)))
            throw WitnessError("tau is not real on the real line");
    }

    // sup|tau| on a grid spanning the node window, with the closed-form
    // limits at +/- infinity appended.
    const std::vector<Term> ts = unit_spec.terms(1e-14);
    const double glo = ts.front().gamma - 8.0 / unit_spec.a;
    const double ghi = ts.back().gamma + 8.0 / unit_spec.a;
    double sup_tau = std::max(std::abs(tau.limit_plus), std::abs(tau.limit_minus));
    double min_tau = std::min(tau.limit_plus, tau.limit_minus);
    double max_tau = std::max(tau.limit_plus, tau.limit_minus);
    for (int i = 0; i <= 1024; ++i) {
        const double x = glo + (ghi - glo) * i / 1024.0;
        const double v = tau_r(x);
        if (!std::isfinite(v)) continue; // h witnesses have a cancelled pole
        sup_tau = std::max(sup_tau, std::abs(v));
        min_tau = std::min(min_tau, v);
        max_tau = std::max(max_tau, v);
    }
    if (!std::isfinite(sup_tau) || sup_tau > 1e12)
        throw WitnessError("tau is effectively unbounded");
    if (max_tau - min_tau <= 1e-9 * (1.0 + sup_tau))
        throw WitnessError("tau is constant: no decomposition");

    const Envelope env = l1_envelope(unit_spec, 0.0, tol);
    const std::vector<double> splits = quad_splits(unit_spec);
    const QuadratureResult nf = integrate_l1(absf, env, tol, splits);

    // Mean s = int |f| tau / int |f|.
    Envelope env_t = env;
    env_t.amp_lo *= sup_tau;
    env_t.amp_hi *= sup_tau;
    env_t.check_samples = false; // bound inherited from |f| times sup|tau|
    const QuadratureResult nft =
        integrate_l1([&](double x) { return absf(x) * tau_r(x); }, env_t, tol * sup_tau, splits);
    const double s = nft.value / nf.value;

    // eps with the strict-positivity margin 1 - eps |tau - s| > 0.
    const double sup_tau0 = sup_tau + std::abs(s);
    double eps = 1.0 / (4.0 * (1.0 + sup_tau0));
    for (int halvings = 0; halvings < 60; ++halvings) {
        bool ok = true;
        for (int i = 0; i <= 1024 && ok; ++i) {
            const double x = glo + (ghi - glo) * i / 1024.0;
            const double t0 = tau_r(x) - s;
            if (std::isfinite(t0) && !(1.0 - eps * std::abs(t0) > 0.0)) ok = false;
        }
        if (ok) break;
        eps *= 0.5;
        if (eps < 1e-12) throw WitnessError("epsilon underflow: tau effectively unbounded");
    }

    auto half = [&](double sign) {
        Envelope e2 = env;
        const double mult = 1.0 + eps * (sup_tau + std::abs(s));
        e2.amp_lo *= mult;
        e2.amp_hi *= mult;
        e2.check_samples = false;
        return integrate_l1(
            [&](double x) {
                const double t0 = tau_r(x) - s;
                return absf(x) * std::abs(1.0 + sign * eps * t0);
            },
            e2, tol, splits);
    };
    const QuadratureResult np = half(+1.0);
    const QuadratureResult nm = half(-1.0);

    // Grid distance between the two halves: sup |f_plus - f_minus| = 2 eps |f tau0|.
    double dist = 0.0;
    for (int i = 0; i <= 256; ++i) {
        const double x = glo + (ghi - glo) * i / 256.0;
        const double t0 = tau_r(x) - s;
        if (std::isfinite(t0)) dist = std::max(dist, 2.0 * eps * absf(x) * std::abs(t0));
    }

    Witness w;
    w.kind = kind;
    w.params = std::move(params);
    w.verification = {
        {"resynthesis_residual", membership_residual},
        {"recovered_l1", membership_l1},
        {"sup_tau", sup_tau},
        {"mean_s", s},
        {"epsilon", eps},
        {"l1_f", nf.value},
        {"l1_f_plus", np.value},
        {"l1_f_minus", nm.value},
        {"midpoint_defect",
         std::max(std::abs(np.value - nf.value), std::abs(nm.value - nf.value))},
        {"grid_distance", dist},
    };
    const double defect = w.verification["midpoint_defect"].get<double>();
    if (defect > 1e-8 * std::max(1.0, nf.value))
        throw WitnessError("midpoint norms drift from ||f||");
    if (dist <= 1e-6 * nf.value)
        throw WitnessError("decomposition halves coincide");
    return w;
}

} // namespace extball
