#ifndef EXTBALL_MODEL_HPP
#define EXTBALL_MODEL_HPP

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace extball {

using cplx = std::complex<double>;

enum class Generator { Gauss, Sech };
enum class TailFamily { Geometric, PowerLaw, GaussianTail };

/// Translation nodes: either all integers or an explicit separated set.
struct NodeSet {
    bool integers = true;
    std::vector<double> points; // explicit case, strictly increasing

    /// Minimal gap between declared nodes (1 for the integer lattice).
    double separation() const;
    bool contains(double gamma) const;
};

/// One translate and its coefficient.
struct Term {
    double gamma;
    cplx c;
};

/// Symbolic two-sided decay model for coefficient sequences on the
/// integer lattice. c_n = scale(side) * fam(|n|), with finite overrides.
/// n >= 0 uses scale_plus, n < 0 uses scale_minus.
struct TailModel {
    TailFamily family = TailFamily::Geometric;
    double param = 0.5;      // rho / p / beta
    double scale_plus = 1.0;
    double scale_minus = 1.0;
    std::map<long, cplx> overrides;

    double base_value(long n) const;       // fam(|n|) with side scale, no overrides
    cplx value(long n) const;              // with overrides
    /// l1 mass of the two tails strictly beyond |n| = w (closed-form bound).
    double tail_mass_beyond(long w) const;
};

struct CoefficientModel {
    bool finite = true;
    std::vector<Term> values;              // finite case, sorted by gamma
    std::optional<TailModel> tail;         // parametric case
};

/// Integer-indexed node window [lo, hi].
struct NodeWindow {
    long lo = 0;
    long hi = 0;
};

/// Full description of an element f = sum c_gamma g(. - gamma).
struct FunctionSpec {
    Generator kind = Generator::Gauss;
    double a = 1.0;
    NodeSet nodes;
    CoefficientModel coeffs;
    bool normalize = false;

    /// Truncated list of terms whose dropped l1 mass is <= eps.
    std::vector<Term> terms(double eps) const;
    /// l1 mass dropped by terms(eps).
    double dropped_mass(double eps) const;
    /// Exact l1 norm of the full coefficient sequence (finite: exact sum;
    /// parametric: numerical sum with negligible analytic remainder).
    double coeff_l1() const;
    /// Rescale all coefficients by a positive factor.
    FunctionSpec scaled(double s) const;
};

NodeWindow effective_support(const FunctionSpec& spec, double eps);

FunctionSpec parse_spec(const std::string& text);
FunctionSpec spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json serialize_spec(const FunctionSpec& spec);

} // namespace extball

#endif
