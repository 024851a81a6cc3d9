#include "extball/classify.hpp"
#include "extball/evaluate.hpp"
#include "extball/gauss.hpp"
#include "extball/secant.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace extball;

namespace {

Tolerances make_tols(double quad, double root, double pair) {
    Tolerances t;
    t.quad = quad;
    t.root = root;
    t.pair = pair;
    return t;
}

std::string classify_json(const std::string& spec_json, double tol_quad,
                          double tol_root, double tol_pair) {
    const FunctionSpec spec = parse_spec(spec_json);
    return classify(spec, make_tols(tol_quad, tol_root, tol_pair)).to_json().dump(2);
}

py::tuple l1_norm_py(const std::string& spec_json, double tol) {
    const FunctionSpec spec = parse_spec(spec_json);
    const QuadratureResult q = l1_norm(spec, tol);
    return py::make_tuple(q.value, q.error_bound);
}

std::string zeros_json(const std::string& spec_json, double tol_root) {
    const FunctionSpec spec = parse_spec(spec_json);
    const SymbolZeros sz = spec.kind == Generator::Gauss
                               ? symbol_zeros(gauss_symbol(spec, 1e-14), tol_root)
                               : symbol_zeros(secant_symbol(spec), tol_root);
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const Root& r : sz.roots) {
        const cplx lam = strip_zero(r.w, sz.a);
        out.push_back({{"w_re", r.w.real()},
                       {"w_im", r.w.imag()},
                       {"lambda_re", lam.real()},
                       {"lambda_im", lam.imag()},
                       {"multiplicity", r.multiplicity},
                       {"residual", r.residual}});
    }
    return out.dump(2);
}

std::string recover_json(const std::string& spec_json, double eps) {
    const FunctionSpec spec = parse_spec(spec_json);
    const CplxFn f = cplx_evaluator(spec);
    nlohmann::ordered_json out;
    if (spec.kind == Generator::Gauss) {
        const RecoveredCoeffs rc = membership_v1_gauss(f, spec.a, eps);
        nlohmann::ordered_json cs = nlohmann::ordered_json::array();
        for (const auto& [n, c] : rc.coeffs)
            cs.push_back({{"node", n}, {"re", c.real()}, {"im", c.imag()}});
        out["coefficients"] = cs;
        out["resynthesis_residual"] = rc.resynth_residual;
        out["l1"] = rc.l1;
    } else {
        std::vector<double> nodes;
        for (const Term& t : spec.terms(1e-14)) nodes.push_back(t.gamma);
        const RecoveredCoeffs rc = membership_v1_secant(f, nodes, spec.a, eps);
        nlohmann::ordered_json cs = nlohmann::ordered_json::array();
        for (size_t i = 0; i < nodes.size(); ++i)
            cs.push_back({{"node", nodes[i]},
                          {"re", rc.values[i].real()},
                          {"im", rc.values[i].imag()}});
        out["coefficients"] = cs;
        out["resynthesis_residual"] = rc.resynth_residual;
        out["l1"] = rc.l1;
    }
    return out.dump(2);
}

} // namespace

PYBIND11_MODULE(pyextball, m) {
    m.doc() = "extreme and exposed points of unit balls in Gaussian and "
              "hyperbolic-secant shift-invariant spaces";

    m.def("classify", &classify_json, py::arg("spec_json"),
          py::arg("tol_quad") = 1e-10, py::arg("tol_root") = 1e-10,
          py::arg("tol_pair") = 1e-6,
          "Classify a JSON function spec; returns the full report as JSON.");
    m.def("l1_norm", &l1_norm_py, py::arg("spec_json"), py::arg("tol") = 1e-10,
          "L1 norm of a JSON function spec as (value, error_bound).");
    m.def("zeros", &zeros_json, py::arg("spec_json"), py::arg("tol_root") = 1e-10,
          "Symbol zeros in the w-plane with strip coordinates, as JSON.");
    m.def("recover", &recover_json, py::arg("spec_json"), py::arg("eps") = 1e-10,
          "Membership round trip: recovered coefficients and residual, as JSON.");
}
