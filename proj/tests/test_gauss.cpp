#include "extball/errors.hpp"
#include "extball/evaluate.hpp"
#include "extball/gauss.hpp"

#include <cmath>
#include <doctest.h>
#include <random>

using namespace extball;

namespace {

FunctionSpec make(std::vector<Term> ts) {
    FunctionSpec s;
    s.kind = Generator::Gauss;
    s.a = 1.0;
    s.nodes.integers = true;
    s.coeffs.finite = true;
    s.coeffs.values = std::move(ts);
    return s;
}

} // namespace

TEST_CASE("pointwise evaluation oracles") {
    const FunctionSpec s = make({{0.0, 1.0}});
    CHECK(std::abs(eval_gauss(s, 0.0) - cplx(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(eval_gauss(s, 2.0) - cplx(std::exp(-4.0), 0.0)) <= 1e-15);
    // |e^{-(iy)^2}| = e^{y^2}
    CHECK(std::abs(eval_gauss(s, cplx(0.0, 1.5))) ==
          doctest::Approx(std::exp(2.25)).epsilon(1e-13));
}

TEST_CASE("symbol coefficients are c_n e^{-a n^2}") {
    const FunctionSpec s = make({{-1.0, cplx(0.0, -2.0)}, {0.0, 3.0}, {2.0, 1.0}});
    const GaussSymbol sym = gauss_symbol(s, 1e-16);
    CHECK(sym.truncation_bound == 0.0);
    REQUIRE(sym.n_lo == -1);
    REQUIRE(sym.laurent.size() == 4);
    CHECK(std::abs(sym.laurent[0] - cplx(0.0, -2.0) * std::exp(-1.0)) <= 1e-15);
    CHECK(std::abs(sym.laurent[1] - cplx(3.0, 0.0)) <= 1e-15);
    CHECK(std::abs(sym.laurent[2]) <= 1e-15);
    CHECK(std::abs(sym.laurent[3] - std::exp(-4.0)) <= 1e-15);
}

TEST_CASE("symbol is the periodization of e^{az^2} f") {
    const FunctionSpec s = make({{-1.0, cplx(0.3, 0.4)}, {1.0, 1.0}});
    const GaussSymbol sym = gauss_symbol(s, 1e-16);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int k = 0; k < 20; ++k) {
        const cplx z(U(rng), U(rng));
        const cplx w = std::exp(2.0 * z);
        cplx phi = 0.0;
        for (size_t i = 0; i < sym.laurent.size(); ++i)
            phi += sym.laurent[i] *
                   std::pow(w, static_cast<double>(sym.n_lo + static_cast<long>(i)));
        const cplx direct = std::exp(z * z) * eval_gauss(s, z);
        CHECK(std::abs(phi - direct) <= 1e-12 * (1.0 + std::abs(direct)));
    }
}

TEST_CASE("membership recovers the generating coefficients") {
    const FunctionSpec s = make({{-2.0, cplx(0.1, -0.7)}, {0.0, 1.0}, {1.0, cplx(0.0, 0.5)}});
    const CplxFn f = cplx_evaluator(s);
    const RecoveredCoeffs rc = membership_v1_gauss(f, s.a, 1e-10);
    CHECK(rc.resynth_residual <= 1e-10);
    for (const Term& t : s.coeffs.values) {
        bool found = false;
        for (const auto& [n, c] : rc.coeffs)
            if (static_cast<double>(n) == t.gamma) {
                found = true;
                CHECK(std::abs(c - t.c) <= 1e-10);
            }
        CHECK(found);
    }
}

TEST_CASE("weighted shift: single Gaussian oracle") {
    // e^{2x} e^{-x^2} = e * e^{-(x-1)^2}
    const FunctionSpec s = make({{0.0, 1.0}});
    const FunctionSpec g = weighted_shift_gauss(s, +1);
    REQUIRE(g.coeffs.values.size() == 1);
    CHECK(g.coeffs.values[0].gamma == 1.0);
    CHECK(std::abs(g.coeffs.values[0].c - std::exp(1.0)) <= 1e-14);
    const CplxFn fe = cplx_evaluator(s);
    const CplxFn ge = cplx_evaluator(g);
    for (double x : {-1.0, 0.0, 0.7, 2.3})
        CHECK(std::abs(ge(x) - std::exp(2.0 * x) * fe(x)) <= 1e-13);
}

TEST_CASE("weighted sum divergence decisions") {
    FunctionSpec s;
    s.kind = Generator::Gauss;
    s.a = 1.0;
    s.nodes.integers = true;
    s.coeffs.finite = false;
    TailModel tm;
    tm.family = TailFamily::Geometric;
    tm.param = 0.9; // rho * e^2 > 1
    s.coeffs.tail = tm;
    CHECK(gauss_weighted_sum_diverges(s, +1));
    CHECK_THROWS_AS(weighted_shift_gauss(s, +1), DivergentWeighting);

    tm.family = TailFamily::GaussianTail;
    tm.param = 3.0;
    s.coeffs.tail = tm;
    CHECK_FALSE(gauss_weighted_sum_diverges(s, +1));
    const FunctionSpec g = weighted_shift_gauss(s, +1);
    // new l1 norm is sum e^{-3n^2} e^{2n+1}
    double want = 0.0;
    for (long n = -60; n <= 60; ++n)
        want += std::exp(-3.0 * n * n) * std::exp(2.0 * n + 1.0);
    CHECK(g.coeff_l1() == doctest::Approx(want).epsilon(1e-10));

    tm.family = TailFamily::PowerLaw;
    tm.param = 2.0;
    s.coeffs.tail = tm;
    CHECK(gauss_weighted_sum_diverges(s, +1)); // e^{2n}/n^2 -> infinity
}
