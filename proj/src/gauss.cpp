#include "extball/gauss.hpp"
#include "extball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace extball {

namespace {

long max_recoverable_index(double a) {
    // e^{a x0^2} must stay within double range at the sampling abscissa.
    return static_cast<long>(std::floor(std::sqrt(600.0 / a)));
}

int sample_count(double a) {
    // Aliasing from index n +/- N is damped by e^{-a N^2}; pick N so that
    // this factor is far below the recovery tolerances.
    int n = 16;
    while (n * n * a < 40.0) n *= 2;
    return n;
}

// Recovers c_n(q) = a_n e^{a n^2} from the segment DFT at abscissa
// x0 = n + shift, where the n-th Laurent term dominates.
cplx recover_coefficient(const CplxFn& q, double a, long n, double shift) {
    auto phi = [&](cplx z) { return std::exp(a * z * z) * q(z); };
    const double x0 = static_cast<double>(n) + shift;
    const std::vector<cplx> an = laurent_coefficients(phi, a, x0, n, n, sample_count(a));
    return an[0] * std::exp(a * static_cast<double>(n) * static_cast<double>(n));
}

} // namespace

cplx eval_gauss(const FunctionSpec& spec, cplx z) {
    if (spec.kind != Generator::Gauss) throw ValidationError("not a gauss spec");
    const double y = z.imag();
    if (spec.a * y * y > 700.0)
        throw OverflowGuard("a*Im(z)^2 exceeds the floating-point range");
    cplx sum = 0.0;
    for (const Term& t : spec.terms(1e-16 * (1.0 + spec.coeff_l1()))) {
        const cplx d = z - t.gamma;
        sum += t.c * std::exp(-spec.a * d * d);
    }
    return sum;
}

GaussSymbol gauss_symbol(const FunctionSpec& spec, double eps) {
    if (spec.kind != Generator::Gauss) throw ValidationError("not a gauss spec");
    std::vector<Term> ts = spec.terms(eps);
    if (ts.empty()) throw DegenerateInput("empty gauss spec");

    GaussSymbol sym;
    sym.a = spec.a;
    sym.truncation_bound = spec.dropped_mass(eps); // e^{-a n^2} <= 1 on dropped terms
    const long lo = static_cast<long>(ts.front().gamma);
    const long hi = static_cast<long>(ts.back().gamma);
    sym.n_lo = lo;
    sym.laurent.assign(static_cast<size_t>(hi - lo + 1), cplx(0.0, 0.0));
    for (const Term& t : ts) {
        const long n = static_cast<long>(t.gamma);
        sym.laurent[static_cast<size_t>(n - lo)] =
            t.c * std::exp(-spec.a * static_cast<double>(n) * static_cast<double>(n));
    }
    // Trim exactly-zero fringe coefficients.
    while (sym.laurent.size() > 1 && std::abs(sym.laurent.back()) == 0.0)
        sym.laurent.pop_back();
    while (sym.laurent.size() > 1 && std::abs(sym.laurent.front()) == 0.0) {
        sym.laurent.erase(sym.laurent.begin());
        ++sym.n_lo;
    }

    if (spec.coeffs.finite) {
        sym.r_min = 0.0;
        sym.r_max = std::numeric_limits<double>::infinity();
        return sym;
    }

    // Certified annulus: circles |w| = r where the dropped-term mass is
    // below 1e-10 of the largest retained term. Scanned on a log grid.
    const TailModel& tm = *spec.coeffs.tail;
    const long W = std::max(sym.n_hi(), -sym.n_lo);
    auto dropped_mass_at = [&](double logr) {
        double mass = 0.0;
        for (long n = W + 1; n <= W + 200; ++n) {
            const double nn = static_cast<double>(n);
            mass += std::abs(tm.base_value(n)) * std::exp(-spec.a * nn * nn + nn * logr);
            mass += std::abs(tm.base_value(-n)) * std::exp(-spec.a * nn * nn - nn * logr);
        }
        return mass;
    };
    auto retained_max_at = [&](double logr) {
        double best = 0.0;
        for (size_t k = 0; k < sym.laurent.size(); ++k) {
            const double n = static_cast<double>(sym.n_lo + static_cast<long>(k));
            best = std::max(best, std::abs(sym.laurent[k]) * std::exp(n * logr));
        }
        return best;
    };
    const double L = 2.0 * spec.a * (static_cast<double>(W) + 6.0);
    sym.r_min = std::numeric_limits<double>::quiet_NaN();
    sym.r_max = std::numeric_limits<double>::quiet_NaN();
    const int grid = 400;
    for (int i = 0; i <= grid; ++i) {
        const double logr = -L + 2.0 * L * i / grid;
        if (dropped_mass_at(logr) < 1e-10 * retained_max_at(logr)) {
            if (std::isnan(sym.r_min)) sym.r_min = std::exp(logr);
            sym.r_max = std::exp(logr);
        }
    }
    if (std::isnan(sym.r_min)) {
        sym.r_min = 1.0;
        sym.r_max = 1.0;
    }
    return sym;
}

RecoveredCoeffs membership_v1_gauss(const CplxFn& q, double a, double eps) {
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    const long nmax = max_recoverable_index(a);
    const double shift = 0.25 / a;

    std::map<long, cplx> rec;
    auto recover_checked = [&](long n) {
        const cplx c1 = recover_coefficient(q, a, n, 0.0);
        const cplx c2 = recover_coefficient(q, a, n, shift);
        const double scale =
            std::max({std::abs(c1), std::abs(c2), 1e-30});
        if (std::abs(c1 - c2) > 1e-7 * scale + 1e-14)
            throw MembershipError(
                "two-abscissa cross-check failed (function not periodic in the symbol sense)");
        return 0.5 * (c1 + c2);
    };

    // Seed the window at the real-axis peak of |q|, then grow outward
    // until both fringes decay below eps of the coefficient peak.
    long center = 0;
    double best = -1.0;
    for (long n = -nmax; n <= nmax; ++n) {
        const double v = std::abs(q(cplx(static_cast<double>(n), 0.0)));
        if (v > best) {
            best = v;
            center = n;
        }
    }
    long lo = std::max(-nmax, center - 2), hi = std::min(nmax, center + 2);
    for (long n = lo; n <= hi; ++n) rec[n] = recover_checked(n);
    auto peak = [&]() {
        double m = 0.0;
        for (const auto& kv : rec) m = std::max(m, std::abs(kv.second));
        return m;
    };
    auto fringe_small = [&](long edge, int dir) {
        const double thresh = eps * std::max(peak(), 1e-30);
        for (int k = 0; k < 3; ++k) {
            auto it = rec.find(edge - dir * k);
            if (it == rec.end() || std::abs(it->second) > thresh) return false;
        }
        return true;
    };
    while (!fringe_small(hi, +1)) {
        if (hi >= nmax) throw MembershipError("recovered coefficients do not decay (not summable)");
        ++hi;
        rec[hi] = recover_checked(hi);
    }
    while (!fringe_small(lo, -1)) {
        if (lo <= -nmax) throw MembershipError("recovered coefficients do not decay (not summable)");
        --lo;
        rec[lo] = recover_checked(lo);
    }

    RecoveredCoeffs out;
    for (const auto& kv : rec) {
        out.coeffs.emplace_back(kv.first, kv.second);
        out.l1 += std::abs(kv.second);
    }

    // Resynthesis check on a real grid.
    auto synth = [&](double x) {
        cplx s = 0.0;
        for (const auto& kv : rec) {
            const double d = x - static_cast<double>(kv.first);
            s += kv.second * std::exp(-a * d * d);
        }
        return s;
    };
    const double glo = static_cast<double>(lo) - 2.0, ghi = static_cast<double>(hi) + 2.0;
    double scale = 0.0, worst = 0.0;
    std::vector<double> qs(64), ss(64);
    for (int i = 0; i < 64; ++i) {
        const double x = glo + (ghi - glo) * (i + 0.5) / 64.0;
        const cplx qv = q(cplx(x, 0.0));
        const cplx sv = synth(x);
        scale = std::max(scale, std::abs(qv));
        worst = std::max(worst, std::abs(qv - sv));
    }
    out.resynth_residual = worst / std::max(scale, 1e-300);
    if (out.resynth_residual > 1e-8)
        throw MembershipError("resynthesis mismatch: recovered series does not reproduce q");
    return out;
}

bool gauss_weighted_sum_diverges(const FunctionSpec& spec, int side) {
    if (spec.coeffs.finite) return false;
    const TailModel& tm = *spec.coeffs.tail;
    const double scale = (side > 0) ? tm.scale_plus : tm.scale_minus;
    if (scale == 0.0) return false;
    switch (tm.family) {
        case TailFamily::Geometric:
            return tm.param * std::exp(2.0 * spec.a) >= 1.0;
        case TailFamily::PowerLaw:
            return true;
        case TailFamily::GaussianTail:
            return false;
    }
    return false;
}

FunctionSpec weighted_shift_gauss(const FunctionSpec& spec, int side) {
    if (spec.kind != Generator::Gauss) throw ValidationError("not a gauss spec");
    if (side != 1 && side != -1) throw ValidationError("side must be +1 or -1");
    if (gauss_weighted_sum_diverges(spec, side))
        throw DivergentWeighting("weighted coefficient sum diverges on this side");

    const double s = static_cast<double>(side);
    FunctionSpec out;
    out.kind = Generator::Gauss;
    out.a = spec.a;
    out.nodes.integers = true;
    out.coeffs.finite = true;
    out.normalize = false;
    // e^{2as x} e^{-a(x-n)^2} = e^{a(2sn+1)} e^{-a(x-n-s)^2}
    std::vector<Term> ts = spec.terms(1e-16);
    if (!spec.coeffs.finite) {
        // Truncate on the *weighted* coefficients: the raw l1 window can
        // drop terms whose e^{2asn} factor is still significant.
        const TailModel& tm = *spec.coeffs.tail;
        NodeWindow w = effective_support(spec, 1e-16);
        auto weighted = [&](long n) {
            return std::abs(tm.value(n)) *
                   std::exp(spec.a * (2.0 * s * static_cast<double>(n) + 1.0));
        };
        double peak = 0.0;
        for (const Term& t : ts)
            peak = std::max(peak, std::abs(t.c) *
                                      std::exp(spec.a * (2.0 * s * t.gamma + 1.0)));
        for (int i = 0; i < 8000 && w.hi < 20000; ++i) {
            const long n = w.hi + 1;
            if (weighted(n) <= 1e-16 * peak && weighted(n + 1) <= weighted(n)) break;
            ts.push_back({static_cast<double>(n), tm.value(n)});
            ++w.hi;
        }
        for (int i = 0; i < 8000 && w.lo > -20000; ++i) {
            const long n = w.lo - 1;
            if (weighted(n) <= 1e-16 * peak && weighted(n - 1) <= weighted(n)) break;
            ts.push_back({static_cast<double>(n), tm.value(n)});
            --w.lo;
        }
    }
    for (const Term& t : ts) {
        const double n = t.gamma;
        const cplx c = t.c * std::exp(spec.a * (2.0 * s * n + 1.0));
        out.coeffs.values.push_back({n + s, c});
    }
    std::sort(out.coeffs.values.begin(), out.coeffs.values.end(),
              [](const Term& x, const Term& y) { return x.gamma < y.gamma; });
    return out;
}

} // namespace extball
