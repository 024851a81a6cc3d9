#ifndef EXTBALL_WITNESS_HPP
#define EXTBALL_WITNESS_HPP

#include "extball/model.hpp"
#include "extball/numerics.hpp"

#include <json.hpp>

namespace extball {

/// A bounded multiplier witnessing a failed condition, with closed-form
/// limits at +/- infinity used when estimating its sup on the real line.
struct Multiplier {
    CplxFn fn;                 // evaluable on C (real on R)
    double limit_plus = 0.0;   // limit at +infinity
    double limit_minus = 0.0;  // limit at -infinity
};

/// tau(z) = 1 / ((e^{2az} - e^{2a lambda})(e^{2az} - e^{2a conj(lambda)})),
/// for a paired zero {lambda, conj(lambda)} off the strip midline.
Multiplier build_tau_paired(cplx lambda, double a);

/// tau(x) = 1 / (e^{2ax} + |e^{2a lambda}|) for a midline zero
/// (Im lambda = pi/(2a), i.e. e^{2a lambda} negative real).
Multiplier build_tau_negative_real(cplx lambda, double a);

/// tau(x) = cosh(a(x - sigma')) / cosh(a(x - sigma)) for a vanishing
/// coefficient at sigma, replacement node sigma'.
Multiplier build_ratio_tau(double sigma, double sigma_prime, double a);

/// h(z) = 1 / (e^{2az} - e^{2a lambda})^2 for a real double zero.
Multiplier build_h_double_zero(double lambda, double a);

/// h(x) = e^{2a*side*x}.
Multiplier build_h_modulation(int side, double a);

/// Certificate of non-extremality: f = (f_plus + f_minus)/2 with both
/// halves on the unit sphere and distinct.
struct Witness {
    std::string kind;
    nlohmann::ordered_json params;
    nlohmann::ordered_json verification;
};

/// Arithmetic completion of the extreme-point criterion: with
/// s = int |f| tau / int |f| and tau0 = tau - s, any eps < 1/(2 sup|tau0|)
/// gives ||f(1 +/- eps tau0)||_1 = ||f||_1. The caller must already have
/// verified f*tau membership; its recovered data is passed for the record.
Witness verify_midpoint_decomposition(const FunctionSpec& unit_spec,
                                      const Multiplier& tau,
                                      const std::string& kind,
                                      nlohmann::ordered_json params,
                                      double membership_residual,
                                      double membership_l1,
                                      double tol);

} // namespace extball

#endif
