#ifndef EXTBALL_SECANT_HPP
#define EXTBALL_SECANT_HPP

#include "extball/gauss.hpp" // RecoveredCoeffs
#include "extball/model.hpp"
#include "extball/numerics.hpp"

namespace extball {

/// Poles of a secant-space element: gamma + i pi/(2a) + i pi k / a.
struct PoleLattice {
    double a = 1.0;
    std::vector<double> nodes;

    /// Distance from z to the nearest lattice point.
    double distance(cplx z) const;
    /// Nearest lattice point to z.
    cplx nearest(cplx z) const;
};

/// Rational reduction of a finite secant-space element in v = e^{2az}:
/// f(z) = e^{az} N(v) / D(v) with D(v) = prod_k (v e^{-2a gamma_k} + 1).
struct SecantSymbol {
    double a = 1.0;
    std::vector<double> nodes;  // kept nodes, increasing
    std::vector<cplx> num;      // N, ascending powers of v
    std::vector<cplx> den;      // D, ascending powers of v
    double truncation_bound = 0.0;
    double r_min = 0.0, r_max = 0.0;

    cplx eval_ratio(cplx z) const; // e^{az} N(v)/D(v)
};

cplx eval_secant(const FunctionSpec& spec, cplx z);

/// Candidate coefficients c_gamma(q) = 2ai * Res(q, gamma + i pi/(2a)),
/// computed by a 32-point circular contour around each base pole.
std::vector<cplx> residues_at_base_poles(const CplxFn& q,
                                         const std::vector<double>& nodes, double a);

SecantSymbol secant_symbol(const FunctionSpec& spec);

/// Membership test for a meromorphic q satisfying the antiperiodicity
/// f(z + i pi/a) = -f(z) by construction: extract residues, resynthesize,
/// and require agreement on a real grid and on one complex probe line.
RecoveredCoeffs membership_v1_secant(const CplxFn& q, const std::vector<double>& nodes,
                                     double a, double eps);

struct Moments {
    cplx moment = 0.0;          // sum c_gamma e^{side*a*gamma}
    bool moment_divergent = false;
    double weighted_l1 = 0.0;   // sum |c_gamma| e^{side*2a*gamma}
    bool weighted_divergent = false;
};

Moments moment_sums(const FunctionSpec& spec, int side);

/// Finite secant spec of e^{2a*side*x} f(x) per the re-expansion identity
/// (coefficients -c_gamma e^{2a*side*gamma}; valid when the side moment
/// vanishes). Truncation is chosen on the weighted coefficients.
FunctionSpec reexpanded_secant(const FunctionSpec& spec, int side);

} // namespace extball

#endif
