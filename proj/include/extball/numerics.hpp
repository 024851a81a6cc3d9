#ifndef EXTBALL_NUMERICS_HPP
#define EXTBALL_NUMERICS_HPP

#include <complex>
#include <functional>
#include <vector>

#include "extball/model.hpp"

namespace extball {

using RealFn = std::function<double(double)>;
using CplxFn = std::function<cplx(cplx)>;

/// Analytic decay descriptor dominating |f| outside [x_lo, x_hi]:
///   |f(x)| <= amp_hi * decay(rate_hi, x - x_hi)   for x >= x_hi,
///   |f(x)| <= amp_lo * decay(rate_lo, x_lo - x)   for x <= x_lo,
/// with decay(r, u) = e^{-r u^2} (Gaussian) or e^{-r u} (Exponential).
struct Envelope {
    enum class Kind { Gaussian, Exponential };
    Kind kind = Kind::Gaussian;
    double x_lo = 0.0, x_hi = 0.0;
    double rate_lo = 1.0, rate_hi = 1.0;
    double amp_lo = 0.0, amp_hi = 0.0;
    // Cancellation envelopes (rate 3a secant tails) hold only up to the
    // caller-certified moment condition; spot sampling cannot confirm them.
    bool check_samples = true;
};

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    int panels_used = 0;
    double tail_bound = 0.0;
};

/// Integral of a nonnegative function over the real line: tanh-sinh panels
/// on the window (split at the given abscissae) plus closed-form envelope
/// tails. `splits` should contain the kinks of the integrand (nodes, real
/// zeros of f).
QuadratureResult integrate_l1(const RealFn& absf, const Envelope& env, double tol,
                              const std::vector<double>& splits = {});

/// Integral of e^{b x} * absf(x). Throws DivergentEnvelope when the
/// combined envelope is not integrable.
QuadratureResult integrate_weighted(const RealFn& absf, double b, const Envelope& env,
                                    double tol, const std::vector<double>& splits = {});

/// Closed-form bound on int e^{bx} |f| outside the envelope window.
/// Throws DivergentEnvelope when the combined envelope is not integrable.
double envelope_tail_bound(const Envelope& env, double b);

struct Root {
    cplx w;
    int multiplicity = 1;
    double residual = 0.0;   // |p(w)| / sum_k |c_k| |w|^k
};

struct RootSet {
    std::vector<Root> roots;
    double r_min = 0.0;
    double r_max = 0.0;      // certified annulus in symbol coordinates
};

/// All roots of sum_k coeffs[k] w^k via the balanced companion matrix,
/// with one Newton polish step and cluster-based multiplicity detection.
RootSet roots_of_polynomial(const std::vector<cplx>& coeffs, double tol);

/// Laurent coefficients a_n, n in [n_lo, n_hi], of a pi*i/a-periodic
/// entire function phi, recovered from `samples` equispaced points on the
/// vertical segment z = x0 + i theta/(2a), theta in [0, 2pi).
std::vector<cplx> laurent_coefficients(const CplxFn& phi, double a, double x0,
                                       long n_lo, long n_hi, int samples);

} // namespace extball

#endif
