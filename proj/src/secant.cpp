#include "extball/secant.hpp"
#include "extball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace extball {

namespace {

constexpr double kPi = std::numbers::pi;

// Overflow-safe single-generator value H_a(u) = 1/(e^{au} + e^{-au}).
cplx sech_term(double a, cplx u) {
    const double s = (u.real() >= 0.0) ? 1.0 : -1.0;
    const cplx e = std::exp(-a * s * u); // |e| <= 1
    return e / (1.0 + e * e);
}

bool tail_exp_sum_diverges(const TailModel& tm, double rate, int side) {
    const double scale = (side > 0) ? tm.scale_plus : tm.scale_minus;
    if (scale == 0.0) return false;
    switch (tm.family) {
        case TailFamily::Geometric:    return tm.param * std::exp(rate) >= 1.0;
        case TailFamily::PowerLaw:     return true;
        case TailFamily::GaussianTail: return false;
    }
    return false;
}

} // namespace

double PoleLattice::distance(cplx z) const { return std::abs(z - nearest(z)); }

cplx PoleLattice::nearest(cplx z) const {
    double best = std::numeric_limits<double>::infinity();
    cplx arg = 0.0;
    const double period = kPi / a;
    for (double g : nodes) {
        const double k = std::round((z.imag() - 0.5 * period) / period);
        for (double kk : {k - 1.0, k, k + 1.0}) {
            const cplx p(g, (kk + 0.5) * period);
            if (std::abs(z - p) < best) {
                best = std::abs(z - p);
                arg = p;
            }
        }
    }
    return arg;
}

cplx eval_secant(const FunctionSpec& spec, cplx z) {
    if (spec.kind != Generator::Sech) throw ValidationError("not a sech spec");
    const std::vector<Term> ts = spec.terms(1e-16 * (1.0 + spec.coeff_l1()));
    PoleLattice lattice;
    lattice.a = spec.a;
    for (const Term& t : ts) lattice.nodes.push_back(t.gamma);
    if (lattice.distance(z) < 1e-9)
        throw NearPole("z within 1e-9 of the pole lattice");
    cplx sum = 0.0;
    for (const Term& t : ts) sum += t.c * sech_term(spec.a, z - t.gamma);
    return sum;
}

std::vector<cplx> residues_at_base_poles(const CplxFn& q,
                                         const std::vector<double>& nodes, double a) {
    if (nodes.empty()) throw ValidationError("empty node list");
    double sep = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < nodes.size(); ++i)
        sep = std::min(sep, nodes[i] - nodes[i - 1]);
    const double radius = 0.25 * std::min(sep, 0.5 * kPi / a);

    std::vector<cplx> out;
    out.reserve(nodes.size());
    const int m = 32;
    for (double g : nodes) {
        const cplx pole(g, 0.5 * kPi / a);
        cplx acc = 0.0;
        for (int j = 0; j < m; ++j) {
            const cplx e = std::polar(1.0, 2.0 * kPi * j / m);
            acc += q(pole + radius * e) * e;
        }
        const cplx res = acc * (radius / m);
        out.push_back(cplx(0.0, 2.0 * a) * res);
    }
    return out;
}

SecantSymbol secant_symbol(const FunctionSpec& spec) {
    if (spec.kind != Generator::Sech) throw ValidationError("not a sech spec");

    SecantSymbol sym;
    sym.a = spec.a;
    std::vector<Term> ts;
    if (spec.coeffs.finite) {
        ts = spec.coeffs.values;
        sym.truncation_bound = 0.0;
        sym.r_min = 0.0;
        sym.r_max = std::numeric_limits<double>::infinity();
    } else {
        // Rational reduction needs finite support; record the dropped mass
        // and a conservative annulus one node inside the kept window.
        ts = spec.terms(1e-14);
        sym.truncation_bound = spec.dropped_mass(1e-14);
        const double lo = ts.front().gamma, hi = ts.back().gamma;
        sym.r_min = std::exp(2.0 * spec.a * (lo + 1.0));
        sym.r_max = std::exp(2.0 * spec.a * (hi - 1.0));
    }
    if (ts.empty()) throw DegenerateInput("empty sech spec");
    for (const Term& t : ts) sym.nodes.push_back(t.gamma);

    // Ill-conditioned near-coincident denominator roots are rejected.
    for (size_t i = 1; i < sym.nodes.size(); ++i) {
        const double r0 = std::exp(2.0 * spec.a * sym.nodes[i - 1]);
        const double r1 = std::exp(2.0 * spec.a * sym.nodes[i]);
        if (r1 - r0 <= 1e-12 * std::max(r0, r1))
            throw ValidationError("node pair with numerically coincident denominator roots");
    }

    const size_t m = sym.nodes.size();
    // D(v) = prod_k (v e^{-2a g_k} + 1)
    sym.den.assign(1, cplx(1.0, 0.0));
    for (double g : sym.nodes) {
        const double w = std::exp(-2.0 * spec.a * g);
        std::vector<cplx> next(sym.den.size() + 1, cplx(0.0, 0.0));
        for (size_t i = 0; i < sym.den.size(); ++i) {
            next[i] += sym.den[i];
            next[i + 1] += sym.den[i] * w;
        }
        sym.den = next;
    }
    // N(v) = sum_k c_k e^{-a g_k} prod_{j != k} (v e^{-2a g_j} + 1)
    sym.num.assign(m, cplx(0.0, 0.0));
    for (size_t k = 0; k < m; ++k) {
        std::vector<cplx> part(1, ts[k].c * std::exp(-spec.a * sym.nodes[k]));
        for (size_t j = 0; j < m; ++j) {
            if (j == k) continue;
            const double w = std::exp(-2.0 * spec.a * sym.nodes[j]);
            std::vector<cplx> next(part.size() + 1, cplx(0.0, 0.0));
            for (size_t i = 0; i < part.size(); ++i) {
                next[i] += part[i];
                next[i + 1] += part[i] * w;
            }
            part = next;
        }
        if (sym.num.size() < part.size()) sym.num.resize(part.size(), cplx(0.0, 0.0));
        for (size_t i = 0; i < part.size(); ++i) sym.num[i] += part[i];
    }
    while (sym.num.size() > 1 && std::abs(sym.num.back()) == 0.0) sym.num.pop_back();
    return sym;
}

cplx SecantSymbol::eval_ratio(cplx z) const {
    const cplx v = std::exp(2.0 * a * z);
    cplx n = 0.0, d = 0.0;
    for (size_t i = num.size(); i-- > 0;) n = n * v + num[i];
    for (size_t i = den.size(); i-- > 0;) d = d * v + den[i];
    return std::exp(a * z) * n / d;
}

RecoveredCoeffs membership_v1_secant(const CplxFn& q, const std::vector<double>& nodes,
                                     double a, double eps) {
    if (!(eps > 0.0)) throw ValidationError("eps must be positive");
    RecoveredCoeffs out;
    out.values = residues_at_base_poles(q, nodes, a);
    for (const cplx& c : out.values) out.l1 += std::abs(c);

    auto synth = [&](cplx z) {
        cplx s = 0.0;
        for (size_t k = 0; k < nodes.size(); ++k)
            s += out.values[k] * sech_term(a, z - nodes[k]);
        return s;
    };

    const double glo = nodes.front() - 3.0, ghi = nodes.back() + 3.0;
    double scale = 0.0, worst = 0.0;
    for (int i = 0; i < 64; ++i) {
        const double x = glo + (ghi - glo) * (i + 0.37) / 64.0;
        for (double y : {0.0, 0.25 * kPi / a}) {
            const cplx z(x, y);
            const cplx qv = q(z);
            scale = std::max(scale, std::abs(qv));
            worst = std::max(worst, std::abs(qv - synth(z)));
        }
    }
    out.resynth_residual = worst / std::max(scale, 1e-300);
    if (out.resynth_residual > 1e-8)
        throw MembershipError("residue resynthesis mismatch: q is not in the secant space");
    return out;
}

Moments moment_sums(const FunctionSpec& spec, int side) {
    if (spec.kind != Generator::Sech) throw ValidationError("not a sech spec");
    if (side != 1 && side != -1) throw ValidationError("side must be +1 or -1");
    const double s = static_cast<double>(side);

    Moments mo;
    if (!spec.coeffs.finite) {
        const TailModel& tm = *spec.coeffs.tail;
        mo.moment_divergent = tail_exp_sum_diverges(tm, spec.a, side);
        mo.weighted_divergent = tail_exp_sum_diverges(tm, 2.0 * spec.a, side);
    }

    if (!mo.moment_divergent || !mo.weighted_divergent) {
        // Convergent sums are evaluated term by term; exponential decay of
        // the certified-convergent series makes the remainder negligible.
        double eps = 1e-18;
        for (const Term& t : spec.terms(eps)) {
            if (!mo.moment_divergent)
                mo.moment += t.c * std::exp(s * spec.a * t.gamma);
            if (!mo.weighted_divergent)
                mo.weighted_l1 += std::abs(t.c) * std::exp(s * 2.0 * spec.a * t.gamma);
        }
        if (!spec.coeffs.finite) {
            // Extend beyond the l1 window until the weighted terms die out.
            // Each side separately: the window can be asymmetric.
            const TailModel& tm = *spec.coeffs.tail;
            const NodeWindow w = effective_support(spec, eps);
            auto extend = [&](long start, long step) {
                long m = start;
                for (int i = 0; i < 8000; ++i, m += step) {
                    const double d = static_cast<double>(m);
                    const double t2 = std::abs(tm.base_value(m)) * std::exp(s * 2.0 * spec.a * d);
                    const double t1 = std::abs(tm.base_value(m)) * std::exp(s * spec.a * d);
                    // Weighted terms can still be climbing toward their peak
                    // (wide Gaussian tails); only a falling term ends the scan.
                    const double t2n = std::abs(tm.base_value(m + step)) *
                                       std::exp(s * 2.0 * spec.a * (d + step));
                    if (!mo.moment_divergent)
                        mo.moment += tm.value(m) * std::exp(s * spec.a * d);
                    if (!mo.weighted_divergent)
                        mo.weighted_l1 += std::abs(tm.value(m)) * std::exp(s * 2.0 * spec.a * d);
                    if (t1 <= 1e-18 && t2 <= 1e-18 && t2n <= t2) break;
                }
            };
            extend(w.hi + 1, +1);
            extend(w.lo - 1, -1);
        }
    }
    return mo;
}

FunctionSpec reexpanded_secant(const FunctionSpec& spec, int side) {
    if (spec.kind != Generator::Sech) throw ValidationError("not a sech spec");
    if (side != 1 && side != -1) throw ValidationError("side must be +1 or -1");
    const double s = static_cast<double>(side);
    std::vector<Term> ts = spec.terms(1e-16);
    if (!spec.coeffs.finite) {
        const TailModel& tm = *spec.coeffs.tail;
        NodeWindow w = effective_support(spec, 1e-16);
        auto weighted = [&](long n) {
            return std::abs(tm.value(n)) * std::exp(2.0 * s * spec.a * static_cast<double>(n));
        };
        double peak = 0.0;
        for (const Term& t : ts)
            peak = std::max(peak, std::abs(t.c) * std::exp(2.0 * s * spec.a * t.gamma));
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
        std::sort(ts.begin(), ts.end(),
                  [](const Term& x, const Term& y) { return x.gamma < y.gamma; });
    }
    FunctionSpec g;
    g.kind = Generator::Sech;
    g.a = spec.a;
    g.nodes.integers = false;
    g.coeffs.finite = true;
    for (const Term& t : ts) {
        g.nodes.points.push_back(t.gamma);
        g.coeffs.values.push_back({t.gamma, -t.c * std::exp(2.0 * s * spec.a * t.gamma)});
    }
    return g;
}

} // namespace extball
