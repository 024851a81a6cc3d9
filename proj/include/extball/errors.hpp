#ifndef EXTBALL_ERRORS_HPP
#define EXTBALL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace extball {

/// Input document does not match the expected JSON schema.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& m) : std::runtime_error("schema: " + m) {}
};

/// Structurally valid input that violates a domain invariant.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& m) : std::runtime_error("validation: " + m) {}
};

/// A numerical routine could not reach the requested accuracy or was
/// used outside its contract.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& m) : std::runtime_error("numerics: " + m) {}
};

struct ToleranceNotMet : NumericalError {
    explicit ToleranceNotMet(const std::string& m) : NumericalError("tolerance not met: " + m) {}
};

struct EnvelopeViolation : NumericalError {
    explicit EnvelopeViolation(const std::string& m) : NumericalError("envelope violation: " + m) {}
};

struct DivergentEnvelope : NumericalError {
    explicit DivergentEnvelope(const std::string& m) : NumericalError("divergent envelope: " + m) {}
};

struct DegenerateInput : NumericalError {
    explicit DegenerateInput(const std::string& m) : NumericalError("degenerate input: " + m) {}
};

struct NearPole : NumericalError {
    explicit NearPole(const std::string& m) : NumericalError("near pole: " + m) {}
};

struct OverflowGuard : NumericalError {
    explicit OverflowGuard(const std::string& m) : NumericalError("overflow guard: " + m) {}
};

struct DivergentWeighting : NumericalError {
    explicit DivergentWeighting(const std::string& m) : NumericalError("divergent weighting: " + m) {}
};

struct MembershipError : NumericalError {
    explicit MembershipError(const std::string& m) : NumericalError("membership: " + m) {}
};

struct WitnessError : NumericalError {
    explicit WitnessError(const std::string& m) : NumericalError("witness: " + m) {}
};

} // namespace extball

#endif
