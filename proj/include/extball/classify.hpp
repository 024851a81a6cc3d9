#ifndef EXTBALL_CLASSIFY_HPP
#define EXTBALL_CLASSIFY_HPP

#include "extball/gauss.hpp"
#include "extball/model.hpp"
#include "extball/numerics.hpp"
#include "extball/secant.hpp"
#include "extball/witness.hpp"

#include <json.hpp>

namespace extball {

enum class Status { Pass, Fail, Undecided };

std::string to_string(Status s);

struct ConditionVerdict {
    Status status = Status::Undecided;
    nlohmann::ordered_json evidence;
    double tolerance = 0.0;
    std::string reason; // Undecided only

    nlohmann::ordered_json to_json() const;
};

struct Tolerances {
    double quad = 1e-10;   // quadrature
    double root = 1e-10;   // polynomial root residual
    double pair = 1e-6;    // conjugate-pair matching in the w-plane
    double strip = 1e-6;   // guard band around the strip boundary, in arg(w)
};

/// Symbol data shared by the zero-condition checks: the root set of the
/// reduced polynomial with cancelled/degenerate roots already removed.
struct SymbolZeros {
    double a = 1.0;
    std::vector<Root> roots;        // w-plane (v-plane for secant)
    double r_min = 0.0, r_max = 0.0;
    double truncation_bound = 0.0;  // > 0 means parametric truncation
    bool solve_failed = false;      // root solve did not certify; no zero is trusted
};

SymbolZeros symbol_zeros(const GaussSymbol& sym, double tol_root);
SymbolZeros symbol_zeros(const SecantSymbol& sym, double tol_root);

/// Strip zero lambda = log(w)/(2a) with Im in (0, pi/a).
cplx strip_zero(cplx w, double a);

ConditionVerdict check_norm(const FunctionSpec& spec, double tol, double& norm_out);
ConditionVerdict check_paired_zeros(const SymbolZeros& sz, double tol_pair, double tol_strip);
ConditionVerdict check_nonzero_coeffs(const FunctionSpec& spec, double tol);
ConditionVerdict check_real_double_zero(const SymbolZeros& sz, double tol_strip);
ConditionVerdict check_divergence(const FunctionSpec& spec, int side, double tol = 1e-6);

struct ClassificationReport {
    std::string overall;     // Exposed | ExtremeNotExposed | NotExtreme |
                             // NotNormalized | Undecided
    double l1_norm = 0.0;
    double l1_error_bound = 0.0;
    double normalizing_constant = 1.0; // 1 when normalize=false
    double annulus_lo = 0.0, annulus_hi = 0.0;
    bool finite_nodes = false; // verdict read relative to a finite declared node set
    nlohmann::ordered_json conditions;
    std::vector<Witness> witnesses;
    Tolerances tols;

    nlohmann::ordered_json to_json() const;
};

ClassificationReport classify(const FunctionSpec& spec, const Tolerances& tols = {});

} // namespace extball

#endif
