#include "extball/numerics.hpp"
#include "extball/errors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace extball {

namespace {

constexpr double kPi = std::numbers::pi;

// Tanh-sinh quadrature on [lo, hi]. Levels are refined until the change
// between successive trapezoid sums drops below tol.
double tanh_sinh_panel(const RealFn& g, double lo, double hi, double tol,
                       double& err_out) {
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    const double t_max = 3.7;   // weight underflows well before this for double

    auto node = [&](double t, double& x, double& w) {
        const double s = 0.5 * kPi * std::sinh(t);
        const double ch = std::cosh(s);
        x = c + h * std::tanh(s);
        w = h * 0.5 * kPi * std::cosh(t) / (ch * ch);
    };

    double step = 1.0;
    double x, w;
    node(0.0, x, w);
    double sum = w * g(x);
    for (double t = step; t <= t_max; t += step) {
        node(t, x, w);
        sum += w * g(x);
        node(-t, x, w);
        sum += w * g(x);
    }
    double prev = sum * step;
    double value = prev;
    err_out = std::abs(prev);

    for (int level = 1; level <= 12; ++level) {
        step *= 0.5;
        for (double t = step; t <= t_max; t += 2.0 * step) {
            node(t, x, w);
            sum += w * g(x);
            node(-t, x, w);
            sum += w * g(x);
        }
        value = sum * step;
        err_out = std::abs(value - prev);
        const double floor_err = 1e-16 * (std::abs(value) + 1e-300);
        if (err_out <= std::max(tol, floor_err)) {
            err_out = std::max(err_out, floor_err);
            return value;
        }
        prev = value;
    }
    throw ToleranceNotMet("tanh-sinh panel budget exhausted");
}

double gauss_half_tail(double amp, double rate, double b, double x_edge, int dir) {
    // amp * int_0^inf e^{dir*b*(x_edge + dir*u)} ... written directly:
    // int over u >= 0 of amp * e^{b*(x_edge + dir*u)} * e^{-rate*u^2} du
    const double q = dir * b;
    return amp * std::exp(b * x_edge) * 0.5 * std::sqrt(kPi / rate) *
           std::exp(q * q / (4.0 * rate)) * std::erfc(-q / (2.0 * std::sqrt(rate)));
}

double exp_half_tail(double amp, double rate, double b, double x_edge, int dir) {
    // int over u >= 0 of amp * e^{b*(x_edge + dir*u)} * e^{-rate*u} du
    const double denom = rate - dir * b;
    if (!(denom > 0.0)) {
        if (amp > 0.0)
            throw DivergentEnvelope("exponential envelope does not dominate the weight");
        return 0.0;
    }
    return amp * std::exp(b * x_edge) / denom;
}

double envelope_at(const Envelope& env, double x) {
    if (x >= env.x_hi) {
        const double u = x - env.x_hi;
        return env.amp_hi * (env.kind == Envelope::Kind::Gaussian
                                 ? std::exp(-env.rate_hi * u * u)
                                 : std::exp(-env.rate_hi * u));
    }
    if (x <= env.x_lo) {
        const double u = env.x_lo - x;
        return env.amp_lo * (env.kind == Envelope::Kind::Gaussian
                                 ? std::exp(-env.rate_lo * u * u)
                                 : std::exp(-env.rate_lo * u));
    }
    return std::numeric_limits<double>::infinity();
}

} // namespace

double envelope_tail_bound(const Envelope& env, double b) {
    if (env.kind == Envelope::Kind::Gaussian)
        return gauss_half_tail(env.amp_hi, env.rate_hi, b, env.x_hi, +1) +
               gauss_half_tail(env.amp_lo, env.rate_lo, b, env.x_lo, -1);
    return exp_half_tail(env.amp_hi, env.rate_hi, b, env.x_hi, +1) +
           exp_half_tail(env.amp_lo, env.rate_lo, b, env.x_lo, -1);
}

QuadratureResult integrate_weighted(const RealFn& absf, double b, const Envelope& env,
                                    double tol, const std::vector<double>& splits) {
    if (!(tol > 0.0)) throw ValidationError("quadrature tolerance must be positive");
    if (!(env.x_hi >= env.x_lo)) throw ValidationError("envelope window is empty");

    const double tail = envelope_tail_bound(env, b);

    // Spot check that the envelope really dominates |f| outside the window.
    const double probe = (env.kind == Envelope::Kind::Gaussian) ? 0.7 : 1.3;
    for (int k = 1; env.check_samples && k <= 3; ++k) {
        const double xr = env.x_hi + probe * k;
        const double xl = env.x_lo - probe * k;
        const double slack = 1.0 + 1e-9;
        if (absf(xr) > envelope_at(env, xr) * slack + 1e-300)
            throw EnvelopeViolation("sampled |f| exceeds envelope right of the window");
        if (absf(xl) > envelope_at(env, xl) * slack + 1e-300)
            throw EnvelopeViolation("sampled |f| exceeds envelope left of the window");
    }

    // Panel breakpoints: window edges, caller splits, max panel length 4.
    std::vector<double> pts{env.x_lo, env.x_hi};
    for (double s : splits)
        if (s > env.x_lo && s < env.x_hi) pts.push_back(s);
    std::sort(pts.begin(), pts.end());
    std::vector<double> edges;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        edges.push_back(pts[i]);
        const double len = pts[i + 1] - pts[i];
        const int chunks = std::max(1, static_cast<int>(std::ceil(len / 4.0)));
        for (int k = 1; k < chunks; ++k)
            edges.push_back(pts[i] + len * k / chunks);
    }
    edges.push_back(pts.back());

    QuadratureResult res;
    res.tail_bound = tail;
    const double total_len = env.x_hi - env.x_lo;
    auto weighted = [&](double x) { return std::exp(b * x) * absf(x); };
    double err_total = 0.0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        if (!(hi > lo)) continue;
        const double panel_tol =
            0.5 * tol * std::max((hi - lo) / std::max(total_len, 1e-300), 1e-3);
        double perr = 0.0;
        res.value += tanh_sinh_panel(weighted, lo, hi, panel_tol, perr);
        err_total += perr;
        ++res.panels_used;
    }
    res.value += tail;
    res.error_bound = err_total + tail;
    return res;
}

QuadratureResult integrate_l1(const RealFn& absf, const Envelope& env, double tol,
                              const std::vector<double>& splits) {
    return integrate_weighted(absf, 0.0, env, tol, splits);
}

RootSet roots_of_polynomial(const std::vector<cplx>& coeffs, double tol) {
    if (!(tol > 0.0)) throw ValidationError("root tolerance must be positive");
    std::vector<cplx> c = coeffs;
    double scale = 0.0;
    for (const cplx& v : c) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) throw DegenerateInput("zero polynomial");
    while (!c.empty() && std::abs(c.back()) <= 1e-300 * scale) c.pop_back();
    if (c.size() < 2) throw DegenerateInput("polynomial degree must be >= 1");

    // Roots at the origin from trailing zero coefficients.
    int zero_roots = 0;
    while (std::abs(c.front()) <= 1e-300 * scale) {
        c.erase(c.begin());
        ++zero_roots;
    }

    std::vector<cplx> raw;
    const size_t deg = c.size() - 1;
    if (deg >= 1) {
        // Scale w -> s*v so that the monic polynomial in v has balanced
        // extreme coefficients, then solve the companion eigenproblem.
        const double lead = std::abs(c.back());
        const double low = std::abs(c.front());
        double s = 1.0;
        if (low > 0.0) s = std::pow(low / lead, 1.0 / static_cast<double>(deg));
        if (!(s > 1e-12 && s < 1e12)) s = 1.0;

        std::vector<cplx> m(deg + 1);
        double pw = 1.0;
        for (size_t k = 0; k <= deg; ++k) {
            m[k] = c[k] * pw / (c.back() * std::pow(s, static_cast<double>(deg)));
            pw *= s;
        }
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
        for (size_t k = 0; k < deg; ++k) comp(k, deg - 1) = -m[k];
        for (size_t k = 1; k < deg; ++k) comp(k, k - 1) = 1.0;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        if (es.info() != Eigen::Success)
            throw NumericalError("companion eigenvalue solve failed");
        for (long k = 0; k < static_cast<long>(deg); ++k)
            raw.push_back(es.eigenvalues()(k) * s);

        // One Newton polish step on well-separated roots.
        auto eval = [&](cplx w, cplx& p, cplx& dp) {
            p = 0.0;
            dp = 0.0;
            for (size_t k = c.size(); k-- > 0;) {
                dp = dp * w + p;
                p = p * w + c[k];
            }
        };
        for (cplx& w : raw) {
            for (int it = 0; it < 8; ++it) {
                cplx p, dp;
                eval(w, p, dp);
                if (std::abs(p) == 0.0 || !(std::abs(dp) > 0.0)) break;
                const cplx step = p / dp;
                if (!(std::abs(step) < 0.5 * (1.0 + std::abs(w)))) break;
                w -= step;
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(w))) break;
            }
        }

        // Cluster nearby roots into multiple roots.
        RootSet rs;
        std::vector<bool> used(raw.size(), false);
        for (size_t i = 0; i < raw.size(); ++i) {
            if (used[i]) continue;
            cplx centroid = raw[i];
            int mult = 1;
            used[i] = true;
            for (size_t j = i + 1; j < raw.size(); ++j) {
                if (used[j]) continue;
                if (std::abs(raw[j] - centroid / static_cast<double>(mult)) <=
                    1e-5 * (1.0 + std::abs(raw[i]))) {
                    centroid += raw[j];
                    ++mult;
                    used[j] = true;
                }
            }
            Root r;
            r.w = centroid / static_cast<double>(mult);
            r.multiplicity = mult;
            cplx p, dp;
            eval(r.w, p, dp);
            double denom = 0.0, aw = 1.0;
            for (size_t k = 0; k < c.size(); ++k) {
                denom += std::abs(c[k]) * aw;
                aw *= std::abs(r.w);
            }
            r.residual = std::abs(p) / std::max(denom, 1e-300);
            if (r.residual > tol)
                throw ToleranceNotMet("root residual above tolerance");
            rs.roots.push_back(r);
        }
        for (int k = 0; k < zero_roots; ++k) rs.roots.push_back({0.0, 1, 0.0});
        // Merge the origin roots into one entry.
        if (zero_roots > 1) {
            rs.roots.resize(rs.roots.size() - zero_roots);
            rs.roots.push_back({0.0, zero_roots, 0.0});
        }
        rs.r_min = 0.0;
        rs.r_max = std::numeric_limits<double>::infinity();
        return rs;
    }

    RootSet rs;
    if (zero_roots > 0) rs.roots.push_back({0.0, zero_roots, 0.0});
    rs.r_min = 0.0;
    rs.r_max = std::numeric_limits<double>::infinity();
    return rs;
}

std::vector<cplx> laurent_coefficients(const CplxFn& phi, double a, double x0,
                                       long n_lo, long n_hi, int samples) {
    if (n_hi < n_lo) throw ValidationError("empty coefficient range");
    if (samples < 4 * static_cast<int>(n_hi - n_lo + 1))
        throw ValidationError("need at least 4 samples per recovered coefficient");
    if ((samples & (samples - 1)) != 0)
        throw ValidationError("sample count must be a power of two");

    // Half-step offset keeps the sampling nodes off the half-period line
    // theta = pi, where witness multipliers can have (cancelled) poles.
    std::vector<cplx> vals(samples);
    for (int j = 0; j < samples; ++j) {
        const double theta = 2.0 * kPi * (j + 0.5) / samples;
        vals[j] = phi(cplx(x0, theta / (2.0 * a)));
    }
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(n_hi - n_lo + 1));
    for (long n = n_lo; n <= n_hi; ++n) {
        cplx acc = 0.0;
        for (int j = 0; j < samples; ++j) {
            const double theta = 2.0 * kPi * (j + 0.5) / samples;
            acc += vals[j] * std::polar(1.0, -theta * static_cast<double>(n));
        }
        acc /= static_cast<double>(samples);
        out.push_back(acc * std::exp(-2.0 * a * static_cast<double>(n) * x0));
    }
    return out;
}

} // namespace extball
