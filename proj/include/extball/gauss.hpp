#ifndef EXTBALL_GAUSS_HPP
#define EXTBALL_GAUSS_HPP

#include "extball/model.hpp"
#include "extball/numerics.hpp"

namespace extball {

/// Laurent form of the periodized symbol of a Gaussian-space element:
/// multiplying f by e^{a z^2} gives a pi*i/a-periodic entire function
/// whose Laurent coefficients in w = e^{2az} are a_n = c_n e^{-a n^2}.
struct GaussSymbol {
    double a = 1.0;
    long n_lo = 0;
    std::vector<cplx> laurent;      // a_{n_lo}, a_{n_lo+1}, ...
    double truncation_bound = 0.0;  // l1 mass of dropped a_n
    double r_min = 0.0, r_max = 0.0; // certified annulus in the w-plane

    long n_hi() const { return n_lo + static_cast<long>(laurent.size()) - 1; }
};

cplx eval_gauss(const FunctionSpec& spec, cplx z);

GaussSymbol gauss_symbol(const FunctionSpec& spec, double eps);

struct RecoveredCoeffs {
    std::vector<std::pair<long, cplx>> coeffs; // gauss: integer nodes
    std::vector<cplx> values;                  // secant: aligned with node list
    double resynth_residual = 0.0;             // relative, on the check grid
    double l1 = 0.0;
};

/// Decides membership q in V^1(G_a) for an entire function q whose
/// symbol e^{a z^2} q is pi*i/a-periodic by construction. Coefficients are
/// recovered one abscissa per index (x0 = n), cross-checked at a second
/// abscissa, tested for l1 decay and verified by resynthesis on a real grid.
RecoveredCoeffs membership_v1_gauss(const CplxFn& q, double a, double eps);

/// Spec of g(x) = e^{2a*side*x} f(x): nodes shift by `side`, coefficients
/// pick up the factor e^{a(2*side*n + 1)}. Throws DivergentWeighting when
/// the tail model certifies the weighted coefficient sum diverges.
FunctionSpec weighted_shift_gauss(const FunctionSpec& spec, int side);

/// Symbolic decision for sum_n e^{2a*side*n} |c_n| = infinity.
bool gauss_weighted_sum_diverges(const FunctionSpec& spec, int side);

} // namespace extball

#endif
