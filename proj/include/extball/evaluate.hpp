#ifndef EXTBALL_EVALUATE_HPP
#define EXTBALL_EVALUATE_HPP

#include "extball/model.hpp"
#include "extball/numerics.hpp"

namespace extball {

/// f as a function of a complex argument (generator dispatch).
CplxFn cplx_evaluator(const FunctionSpec& spec);

/// |f| on the real line.
RealFn abs_evaluator(const FunctionSpec& spec);

/// Decay envelope dominating |f| outside a window wide enough that the
/// closed-form tail of int e^{bx} |f| is below tol/4. For secant specs with
/// a vanishing one-sided moment, cancel_hi/lo switch that side to the
/// next-order decay rate 3a (otherwise e^{+-2ax}|f| has no integrable
/// envelope and DivergentEnvelope propagates from the quadrature).
Envelope l1_envelope(const FunctionSpec& spec, double b, double tol,
                     bool cancel_hi = false, bool cancel_lo = false);

/// Kinks of |f| on the real line: translation nodes plus certified real
/// zeros of f (from positive-real symbol roots).
std::vector<double> quad_splits(const FunctionSpec& spec);

/// ||f||_1 with certified error bound.
QuadratureResult l1_norm(const FunctionSpec& spec, double tol);

} // namespace extball

#endif
