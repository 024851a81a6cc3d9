#include "extball/errors.hpp"
#include "extball/evaluate.hpp"
#include "extball/witness.hpp"

#include <cmath>
#include <doctest.h>
#include <numbers>

using namespace extball;

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

TEST_CASE("negative-real tau oracles") {
    // lambda = i pi/2: e^{2 lambda} = -1, tau(x) = 1/(e^{2x} + 1).
    const Multiplier t1 = build_tau_negative_real(cplx(0.0, kPi / 2.0), 1.0);
    CHECK(std::abs(t1.fn(0.0) - cplx(0.5, 0.0)) <= 1e-14);
    CHECK(t1.limit_plus == 0.0);
    CHECK(t1.limit_minus == doctest::Approx(1.0).epsilon(1e-14));

    // lambda = ln(2)/2 + i pi/2: tau(0) = 1/(1 + 2) = 1/3.
    const Multiplier t2 =
        build_tau_negative_real(cplx(0.5 * std::log(2.0), kPi / 2.0), 1.0);
    CHECK(std::abs(t2.fn(0.0) - cplx(1.0 / 3.0, 0.0)) <= 1e-14);

    // Not a midline zero: e^{2 lambda} not negative real.
    CHECK_THROWS_AS(build_tau_negative_real(cplx(0.3, 0.7), 1.0), WitnessError);
}

TEST_CASE("paired tau is real on the line and rejects the midline") {
    const cplx lambda(0.2, 1.1);
    const Multiplier tau = build_tau_paired(lambda, 1.0);
    for (double x : {-1.5, 0.0, 0.4, 2.2}) {
        const cplx v = tau.fn(x);
        CHECK(std::abs(v.imag()) <= 1e-14 * (1.0 + std::abs(v)));
    }
    // tau vanishes at infinity on both sides
    CHECK(tau.limit_plus == 0.0);
    CHECK(std::abs(tau.fn(30.0)) <= 1e-20);
    // lambda on the midline Im = pi/2 must go through the negative-real form
    CHECK_THROWS_AS(build_tau_paired(cplx(0.0, kPi / 2.0), 1.0), WitnessError);
    // lambda outside the strip is rejected
    CHECK_THROWS_AS(build_tau_paired(cplx(0.0, 4.0), 1.0), WitnessError);
}

TEST_CASE("ratio tau limits") {
    const double sigma = 1.0, sigma_p = 0.0, a = 1.0;
    const Multiplier tau = build_ratio_tau(sigma, sigma_p, a);
    // cosh(a(x - sigma'))/cosh(a(x - sigma)) -> e^{+-a(sigma - sigma')}
    CHECK(tau.limit_plus == doctest::Approx(std::exp(a * (sigma - sigma_p))));
    CHECK(tau.limit_minus == doctest::Approx(std::exp(-a * (sigma - sigma_p))));
    CHECK(std::abs(tau.fn(sigma).real() -
                   std::cosh(sigma - sigma_p)) <= 1e-14);
    CHECK_THROWS_AS(build_ratio_tau(1.0, 1.0, 1.0), WitnessError);
}

TEST_CASE("double-zero h oracle") {
    // lambda = 0: h(x) = 1/(e^{2x} - 1)^2, h(ln 2 / 2) = 1.
    const Multiplier h = build_h_double_zero(0.0, 1.0);
    CHECK(std::abs(h.fn(0.5 * std::log(2.0)) - cplx(1.0, 0.0)) <= 1e-13);
    CHECK(h.limit_plus == 0.0);
}

TEST_CASE("modulation h") {
    const Multiplier h = build_h_modulation(+1, 1.0);
    CHECK(std::abs(h.fn(0.7) - cplx(std::exp(1.4), 0.0)) <= 1e-13);
    CHECK_THROWS_AS(build_h_modulation(0, 1.0), WitnessError);
}

TEST_CASE("midpoint decomposition splits a two-translate gauss") {
    // f_sigma with sigma = 2: midline zero at lambda with e^{2 lambda} = -sqrt(2).
    FunctionSpec s;
    s.kind = Generator::Gauss;
    s.a = 1.0;
    s.nodes.integers = true;
    s.coeffs.finite = true;
    s.coeffs.values = {{-1.0, -2.0}, {1.0, 1.0}};
    const double norm = l1_norm(s, 1e-10).value;
    const FunctionSpec unit = s.scaled(1.0 / norm);

    const cplx lambda(0.25 * std::log(2.0), kPi / 2.0);
    const Multiplier tau = build_tau_negative_real(lambda, 1.0);
    const Witness w = verify_midpoint_decomposition(
        unit, tau, "NegativeRealTau",
        {{"lambda_re", lambda.real()}, {"lambda_im", lambda.imag()}}, 0.0, 1.0,
        1e-10);
    CHECK(w.kind == "NegativeRealTau");
    const double l1 = w.verification["l1_f"].get<double>();
    CHECK(std::abs(w.verification["l1_f_plus"].get<double>() - l1) <= 1e-8);
    CHECK(std::abs(w.verification["l1_f_minus"].get<double>() - l1) <= 1e-8);
    CHECK(w.verification["grid_distance"].get<double>() > 1e-6 * l1);
    CHECK(w.verification["epsilon"].get<double>() > 0.0);
}

TEST_CASE("constant multipliers are rejected") {
    FunctionSpec s;
    s.kind = Generator::Sech;
    s.a = 1.0;
    s.nodes.integers = false;
    s.nodes.points = {0.0};
    s.coeffs.finite = true;
    s.coeffs.values = {{0.0, 1.0}};
    const double norm = l1_norm(s, 1e-10).value;
    Multiplier flat;
    flat.fn = [](cplx) { return cplx(1.0, 0.0); };
    flat.limit_plus = flat.limit_minus = 1.0;
    CHECK_THROWS_AS(verify_midpoint_decomposition(s.scaled(1.0 / norm), flat,
                                                  "PairedZeroTau", {}, 0.0, 1.0,
                                                  1e-10),
                    WitnessError);
}
