#include "extball/model.hpp"
#include "extball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace extball {

using nlohmann::json;
using nlohmann::ordered_json;

double NodeSet::separation() const {
    if (integers) return 1.0;
    if (points.size() < 2) return std::numeric_limits<double>::infinity();
    double sep = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < points.size(); ++i)
        sep = std::min(sep, points[i] - points[i - 1]);
    return sep;
}

bool NodeSet::contains(double gamma) const {
    if (integers) return gamma == std::floor(gamma);
    return std::find(points.begin(), points.end(), gamma) != points.end();
}

double TailModel::base_value(long n) const {
    const double s = (n >= 0) ? scale_plus : scale_minus;
    const double m = static_cast<double>(std::labs(n));
    switch (family) {
        case TailFamily::Geometric:    return s * std::pow(param, m);
        case TailFamily::PowerLaw:     return s * std::pow(1.0 + m, -param);
        case TailFamily::GaussianTail: return s * std::exp(-param * m * m);
    }
    return 0.0;
}

cplx TailModel::value(long n) const {
    auto it = overrides.find(n);
    if (it != overrides.end()) return it->second;
    return cplx(base_value(n), 0.0);
}

double TailModel::tail_mass_beyond(long w) const {
    if (w < 0) w = 0;
    const double s = std::abs(scale_plus) + std::abs(scale_minus);
    const double N = static_cast<double>(w);
    switch (family) {
        case TailFamily::Geometric:
            // sum_{n>w} rho^n = rho^{w+1}/(1-rho)
            return s * std::pow(param, N + 1.0) / (1.0 - param);
        case TailFamily::PowerLaw:
            // sum_{n>w} (1+n)^{-p} <= int_w^inf (1+t)^{-p} dt
            return s * std::pow(1.0 + N, 1.0 - param) / (param - 1.0);
        case TailFamily::GaussianTail: {
            // sum_{n>w} e^{-b n^2} <= e^{-b(w+1)^2} / (1 - e^{-b(2w+3)})
            const double b = param;
            const double head = std::exp(-b * (N + 1.0) * (N + 1.0));
            return s * head / (1.0 - std::exp(-b * (2.0 * N + 3.0)));
        }
    }
    return 0.0;
}

std::vector<Term> FunctionSpec::terms(double eps) const {
    std::vector<Term> out;
    if (coeffs.finite) {
        out = coeffs.values;
    } else {
        const NodeWindow w = effective_support(*this, eps);
        out.reserve(static_cast<size_t>(w.hi - w.lo + 1));
        for (long n = w.lo; n <= w.hi; ++n)
            out.push_back({static_cast<double>(n), coeffs.tail->value(n)});
    }
    return out;
}

double FunctionSpec::dropped_mass(double eps) const {
    if (coeffs.finite) return 0.0;
    const NodeWindow w = effective_support(*this, eps);
    return coeffs.tail->tail_mass_beyond(std::max(w.hi, -w.lo));
}

double FunctionSpec::coeff_l1() const {
    double s = 0.0;
    for (const Term& t : terms(1e-18)) s += std::abs(t.c);
    return s + dropped_mass(1e-18);
}

FunctionSpec FunctionSpec::scaled(double s) const {
    FunctionSpec out = *this;
    for (Term& t : out.coeffs.values) t.c *= s;
    if (out.coeffs.tail) {
        out.coeffs.tail->scale_plus *= s;
        out.coeffs.tail->scale_minus *= s;
        for (auto& kv : out.coeffs.tail->overrides) kv.second *= s;
    }
    return out;
}

NodeWindow effective_support(const FunctionSpec& spec, double eps) {
    if (eps <= 0.0) throw ValidationError("effective_support requires eps > 0");
    if (spec.coeffs.finite) {
        if (spec.coeffs.values.empty()) return {0, 0};
        const double lo = spec.coeffs.values.front().gamma;
        const double hi = spec.coeffs.values.back().gamma;
        return {static_cast<long>(std::floor(lo)), static_cast<long>(std::ceil(hi))};
    }
    const TailModel& tm = *spec.coeffs.tail;
    long w = 0;
    while (tm.tail_mass_beyond(w) > eps) {
        ++w;
        if (w > 100000) throw ValidationError("tail window exceeds 1e5 nodes");
    }
    for (const auto& kv : tm.overrides) w = std::max(w, std::labs(kv.first));
    return {-w, w};
}

namespace {

double require_number(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number())
        throw SchemaError(std::string("missing or non-numeric field '") + field + "'");
    return j[field].get<double>();
}

std::string require_string(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string())
        throw SchemaError(std::string("missing or non-string field '") + field + "'");
    return j[field].get<std::string>();
}

cplx parse_value(const json& j) {
    const double re = require_number(j, "re");
    const double im = require_number(j, "im");
    if (!std::isfinite(re) || !std::isfinite(im))
        throw ValidationError("coefficient value is not finite");
    return {re, im};
}

} // namespace

FunctionSpec spec_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("top-level document must be an object");
    FunctionSpec spec;

    if (!j.contains("generator") || !j["generator"].is_object())
        throw SchemaError("missing 'generator' object");
    const json& gen = j["generator"];
    const std::string gkind = require_string(gen, "kind");
    if (gkind == "gauss") spec.kind = Generator::Gauss;
    else if (gkind == "sech") spec.kind = Generator::Sech;
    else throw SchemaError("generator.kind must be 'gauss' or 'sech'");
    spec.a = require_number(gen, "a");
    if (!(spec.a > 0.0) || !std::isfinite(spec.a))
        throw ValidationError("shape parameter a must be positive and finite");

    if (!j.contains("nodes") || !j["nodes"].is_object())
        throw SchemaError("missing 'nodes' object");
    const json& nd = j["nodes"];
    const std::string nkind = require_string(nd, "kind");
    if (nkind == "integers") {
        spec.nodes.integers = true;
    } else if (nkind == "explicit") {
        spec.nodes.integers = false;
        if (!nd.contains("points") || !nd["points"].is_array())
            throw SchemaError("explicit nodes require a 'points' array");
        for (const json& p : nd["points"]) {
            if (!p.is_number()) throw SchemaError("node points must be numbers");
            spec.nodes.points.push_back(p.get<double>());
        }
        if (spec.nodes.points.empty())
            throw ValidationError("explicit node set is empty");
        for (size_t i = 1; i < spec.nodes.points.size(); ++i)
            if (!(spec.nodes.points[i] > spec.nodes.points[i - 1]))
                throw ValidationError("explicit node points must be strictly increasing");
        if (!std::isfinite(spec.nodes.points.front()) || !std::isfinite(spec.nodes.points.back()))
            throw ValidationError("node points must be finite");
    } else {
        throw SchemaError("nodes.kind must be 'integers' or 'explicit'");
    }

    if (!j.contains("coefficients") || !j["coefficients"].is_object())
        throw SchemaError("missing 'coefficients' object");
    const json& co = j["coefficients"];
    const std::string ckind = require_string(co, "kind");
    if (ckind == "finite") {
        spec.coeffs.finite = true;
        if (!co.contains("values") || !co["values"].is_array())
            throw SchemaError("finite coefficients require a 'values' array");
        for (const json& v : co["values"]) {
            const double node = require_number(v, "node");
            if (!spec.nodes.contains(node))
                throw ValidationError("coefficient attached to a node outside the node set");
            spec.coeffs.values.push_back({node, parse_value(v)});
        }
        if (spec.coeffs.values.empty())
            throw ValidationError("finite coefficient model has no values");
        std::sort(spec.coeffs.values.begin(), spec.coeffs.values.end(),
                  [](const Term& x, const Term& y) { return x.gamma < y.gamma; });
        for (size_t i = 1; i < spec.coeffs.values.size(); ++i)
            if (spec.coeffs.values[i].gamma == spec.coeffs.values[i - 1].gamma)
                throw ValidationError("duplicate coefficient node");
    } else if (ckind == "parametric") {
        if (!spec.nodes.integers)
            throw ValidationError("parametric tails require the integer node set");
        spec.coeffs.finite = false;
        TailModel tm;
        const std::string fam = require_string(co, "family");
        tm.param = require_number(co, "param");
        if (fam == "geometric") {
            tm.family = TailFamily::Geometric;
            if (!(tm.param > 0.0 && tm.param < 1.0))
                throw ValidationError("geometric tail requires 0 < rho < 1");
        } else if (fam == "power") {
            tm.family = TailFamily::PowerLaw;
            if (!(tm.param > 1.0))
                throw ValidationError("power-law tail requires p > 1");
        } else if (fam == "gaussian_tail") {
            tm.family = TailFamily::GaussianTail;
            if (!(tm.param > 0.0))
                throw ValidationError("gaussian tail requires beta > 0");
        } else {
            throw SchemaError("family must be 'geometric', 'power' or 'gaussian_tail'");
        }
        tm.scale_plus = require_number(co, "scale_plus");
        tm.scale_minus = require_number(co, "scale_minus");
        if (!std::isfinite(tm.scale_plus) || !std::isfinite(tm.scale_minus))
            throw ValidationError("tail scales must be finite");
        if (co.contains("overrides")) {
            if (!co["overrides"].is_array()) throw SchemaError("'overrides' must be an array");
            for (const json& v : co["overrides"]) {
                const double node = require_number(v, "node");
                if (node != std::floor(node))
                    throw ValidationError("override node must be an integer");
                tm.overrides[static_cast<long>(node)] = parse_value(v);
            }
        }
        spec.coeffs.tail = tm;
    } else {
        throw SchemaError("coefficients.kind must be 'finite' or 'parametric'");
    }

    if (j.contains("normalize")) {
        if (!j["normalize"].is_boolean()) throw SchemaError("'normalize' must be a boolean");
        spec.normalize = j["normalize"].get<bool>();
    }

    if (spec.kind == Generator::Gauss && !spec.nodes.integers)
        throw ValidationError("gauss specs are defined on the integer node set");

    return spec;
}

FunctionSpec parse_spec(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(e.what());
    }
    return spec_from_json(j);
}

ordered_json serialize_spec(const FunctionSpec& spec) {
    ordered_json j;
    j["generator"] = {{"kind", spec.kind == Generator::Gauss ? "gauss" : "sech"},
                      {"a", spec.a}};
    if (spec.nodes.integers) {
        j["nodes"] = {{"kind", "integers"}};
    } else {
        j["nodes"] = {{"kind", "explicit"}, {"points", spec.nodes.points}};
    }
    ordered_json co;
    if (spec.coeffs.finite) {
        co["kind"] = "finite";
        ordered_json vals = ordered_json::array();
        for (const Term& t : spec.coeffs.values)
            vals.push_back({{"node", t.gamma}, {"re", t.c.real()}, {"im", t.c.imag()}});
        co["values"] = vals;
    } else {
        const TailModel& tm = *spec.coeffs.tail;
        co["kind"] = "parametric";
        switch (tm.family) {
            case TailFamily::Geometric:    co["family"] = "geometric"; break;
            case TailFamily::PowerLaw:     co["family"] = "power"; break;
            case TailFamily::GaussianTail: co["family"] = "gaussian_tail"; break;
        }
        co["param"] = tm.param;
        co["scale_plus"] = tm.scale_plus;
        co["scale_minus"] = tm.scale_minus;
        ordered_json ov = ordered_json::array();
        for (const auto& kv : tm.overrides)
            ov.push_back({{"node", kv.first},
                          {"re", kv.second.real()},
                          {"im", kv.second.imag()}});
        co["overrides"] = ov;
    }
    j["coefficients"] = co;
    j["normalize"] = spec.normalize;
    return j;
}

} // namespace extball
