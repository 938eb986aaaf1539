// Python bindings for the toolkit's main operations. Series and bases cross
// the boundary as numpy arrays; reports cross as plain dicts mirroring the
// JSON report documents.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "h2inv/invariance.hpp"
#include "h2inv/report_io.hpp"
#include "h2inv/spec_io.hpp"

namespace py = pybind11;
using namespace h2inv;
using nlohmann::json;

namespace {

py::object json_to_py(const json& j) {
    switch (j.type()) {
        case json::value_t::null:
            return py::none();
        case json::value_t::boolean:
            return py::bool_(j.get<bool>());
        case json::value_t::number_integer:
            return py::int_(j.get<long long>());
        case json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case json::value_t::number_float:
            return py::float_(j.get<double>());
        case json::value_t::string:
            return py::str(j.get<std::string>());
        case json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default:
            return py::none();
    }
}

py::dict report_dict(const InvarianceReport& report) {
    return json_to_py(json::parse(report_to_json(report))).cast<py::dict>();
}

TaylorSeries series_from_array(const Eigen::VectorXcd& coeffs) {
    std::vector<Complex> c(coeffs.data(), coeffs.data() + coeffs.size());
    return TaylorSeries(std::move(c));
}

Eigen::VectorXcd series_to_array(const TaylorSeries& f) {
    Eigen::VectorXcd v(f.size());
    for (int n = 0; n < f.size(); ++n) v(n) = f.coeffs()[n];
    return v;
}

SubspaceBasis basis_from_array(const Eigen::MatrixXcd& vectors) {
    SubspaceBasis basis;
    basis.vectors = vectors;
    basis.order = static_cast<int>(vectors.rows()) - 1;
    basis.label = "external";
    return basis;
}

py::dict basis_dict(const SubspaceBasis& basis) {
    py::dict out;
    out["vectors"] = basis.vectors;
    out["label"] = basis.label;
    out["order"] = basis.order;
    out["dim"] = basis.dim();
    out["usable_shifts"] = basis.usable_shifts;
    out["tail_bound"] = basis.tail_bound;
    return out;
}

SymbolMap symbol_from_name(const std::string& kind, double a) {
    if (kind == "affine") return SymbolMap::affine(a);
    if (kind == "sigma") return SymbolMap::moebius_sigma(a);
    throw std::invalid_argument("symbol kind must be 'affine' or 'sigma'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hardy-space composition/Cesaro invariance toolkit";
    m.attr("__version__") = kToolkitVersion;

    py::register_exception<spec_parse_error>(m, "SpecParseError", PyExc_ValueError);
    py::register_exception<resolution_error>(m, "ResolutionError", PyExc_RuntimeError);
    py::register_exception<theorem_violation>(m, "TheoremViolation", PyExc_RuntimeError);

    py::class_<InnerFunctionSpec>(m, "InnerFunctionSpec")
        .def_static("from_json", &parse_spec, py::arg("text"))
        .def_static("from_file", &load_spec, py::arg("path"))
        .def_static("power", &InnerFunctionSpec::power, py::arg("n"))
        .def_static("single_atom", &InnerFunctionSpec::single_atom, py::arg("angle_radians"),
                    py::arg("mass"), py::arg("unimodular") = Complex(1.0))
        .def_static(
            "blaschke",
            [](const std::vector<std::pair<Complex, int>>& zeros) {
                std::vector<Zero> zs;
                for (const auto& [p, mult] : zeros) zs.push_back(Zero{p, mult, false});
                return InnerFunctionSpec(1.0, std::move(zs), {});
            },
            py::arg("zeros"), "Blaschke product from (point, multiplicity) pairs")
        .def_static(
            "phi_orbit",
            [](Complex z0, double a, int count) {
                ZeroGenerator gen;
                gen.kind = ZeroGenerator::Kind::phi_orbit;
                gen.z0 = z0;
                gen.a = a;
                gen.count = count;
                return InnerFunctionSpec(1.0, {}, {}, {gen});
            },
            py::arg("z0"), py::arg("a"), py::arg("count"),
            "Blaschke product over the phi_a-orbit of z0")
        .def_property_readonly("unimodular", &InnerFunctionSpec::unimodular)
        .def_property_readonly("zeros",
                               [](const InnerFunctionSpec& spec) {
                                   py::list out;
                                   for (const Zero& z : spec.zeros())
                                       out.append(py::make_tuple(z.point, z.multiplicity,
                                                                 z.generator_tail));
                                   return out;
                               })
        .def_property_readonly("atoms",
                               [](const InnerFunctionSpec& spec) {
                                   py::list out;
                                   for (const Atom& a : spec.atoms())
                                       out.append(py::make_tuple(a.angle_radians, a.mass));
                                   return out;
                               })
        .def_property_readonly("zero_free", &InnerFunctionSpec::zero_free)
        .def("to_json", &spec_to_json)
        .def("__repr__", [](const InnerFunctionSpec& spec) {
            return "<InnerFunctionSpec zeros=" + std::to_string(spec.zeros().size()) +
                   " atoms=" + std::to_string(spec.atoms().size()) + ">";
        });

    // series-level operations
    m.def(
        "kernel", [](Complex w, int order) { return series_to_array(kernel(w, order)); },
        py::arg("w"), py::arg("order"), "Reproducing kernel coefficients at w");
    m.def(
        "inner_product",
        [](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
            return inner_product(series_from_array(f), series_from_array(g));
        },
        py::arg("f"), py::arg("g"));
    m.def(
        "eval_series",
        [](const Eigen::VectorXcd& f, Complex z) { return eval(series_from_array(f), z); },
        py::arg("f"), py::arg("z"));
    m.def(
        "multiply",
        [](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
            return series_to_array(multiply(series_from_array(f), series_from_array(g)));
        },
        py::arg("f"), py::arg("g"));
    m.def(
        "divide",
        [](const Eigen::VectorXcd& f, const Eigen::VectorXcd& g, double eps) {
            return series_to_array(divide(series_from_array(f), series_from_array(g), eps));
        },
        py::arg("f"), py::arg("g"), py::arg("eps") = kDivisionEpsilon);
    m.def(
        "exp_series",
        [](const Eigen::VectorXcd& f) {
            return series_to_array(exp_series(series_from_array(f)));
        },
        py::arg("f"));

    // inner functions
    m.def("inner_eval", &inner_eval, py::arg("spec"), py::arg("z"));
    m.def(
        "taylor_of_inner",
        [](const InnerFunctionSpec& spec, int order) {
            return series_to_array(taylor_of_inner(spec, order));
        },
        py::arg("spec"), py::arg("order"));
    m.def(
        "spectra_estimate",
        [](const InnerFunctionSpec& spec, int grid, double tol) {
            auto report = spectra_estimate(spec, grid, default_radius_schedule(), tol);
            return json_to_py(json::parse(spectra_to_json(report)));
        },
        py::arg("spec"), py::arg("grid") = 1024, py::arg("tol") = 0.1);

    // operator matrices
    m.def(
        "affine_matrix",
        [](double a, int order) { return affine_matrix(a, order).entries; }, py::arg("a"),
        py::arg("order"));
    m.def(
        "sigma_matrix", [](double a, int order) { return sigma_matrix(a, order).entries; },
        py::arg("a"), py::arg("order"));
    m.def(
        "cesaro_matrix", [](int order) { return cesaro_matrix(order).entries; },
        py::arg("order"));
    m.def(
        "operator_norm",
        [](const Eigen::MatrixXcd& matrix, int iterations, double tol) {
            auto n = operator_norm(matrix, iterations, tol);
            py::dict out;
            out["value"] = n.value;
            out["converged"] = n.converged;
            out["iterations"] = n.iterations;
            return out;
        },
        py::arg("matrix"), py::arg("iterations") = 500, py::arg("tol") = 1e-10);
    m.def("sigma_boundary_modulus", &sigma_boundary_modulus, py::arg("a"), py::arg("theta"));

    // subspaces
    m.def(
        "beurling_basis",
        [](const InnerFunctionSpec& spec, int order) {
            return basis_dict(beurling_basis(spec, order));
        },
        py::arg("spec"), py::arg("order"));
    m.def(
        "model_basis",
        [](const InnerFunctionSpec& spec, int order) {
            return basis_dict(model_basis(spec, order));
        },
        py::arg("spec"), py::arg("order"));
    m.def(
        "poly_subspace",
        [](int n, int order) { return basis_dict(poly_subspace(n, order)); }, py::arg("n"),
        py::arg("order"));
    m.def(
        "model_kernel",
        [](const InnerFunctionSpec& spec, Complex lam, int order) {
            return series_to_array(model_kernel(spec, lam, order));
        },
        py::arg("spec"), py::arg("lam"), py::arg("order"));

    // invariance certification
    m.def(
        "compression_residual",
        [](const Eigen::MatrixXcd& vectors, const Eigen::MatrixXcd& op) {
            OperatorMatrix wrapped{op, "external"};
            return report_dict(compression_residual(basis_from_array(vectors), wrapped));
        },
        py::arg("basis_vectors"), py::arg("operator_matrix"));
    m.def(
        "schur_quotient",
        [](const InnerFunctionSpec& spec, const std::string& symbol, double a, int order,
           double radius, int grid) {
            return report_dict(
                schur_quotient(spec, symbol_from_name(symbol, a), order, radius, grid));
        },
        py::arg("spec"), py::arg("symbol"), py::arg("a"), py::arg("order") = 256,
        py::arg("radius") = 0.999, py::arg("grid") = 4096);
    m.def(
        "schur_quotient_series",
        [](const InnerFunctionSpec& spec, const std::string& symbol, double a, int order) {
            auto q = SchurQuotient::build(spec, symbol_from_name(symbol, a));
            if (q.blocked())
                throw std::domain_error("quotient not analytic: uncancelled zero");
            return series_to_array(q.to_series(order));
        },
        py::arg("spec"), py::arg("symbol"), py::arg("a"), py::arg("order") = 256);
    m.def(
        "multiplicity_criterion",
        [](const InnerFunctionSpec& spec, double a) {
            return report_dict(multiplicity_criterion(spec.zeros(), a));
        },
        py::arg("spec"), py::arg("a"));
    m.def("zero_orbit", &zero_orbit, py::arg("z0"), py::arg("a"), py::arg("count"));
    m.def("enlarge_invariant", &enlarge_invariant, py::arg("spec"), py::arg("a"),
          py::arg("z0"), py::arg("orbit_count") = 40);
    m.def(
        "classify_beurling",
        [](const InnerFunctionSpec& spec, double a, int order) {
            auto c = classify_beurling(spec, a, order);
            py::dict out;
            out["class"] = to_string(c.cls);
            out["evidence"] = report_dict(c.evidence);
            return out;
        },
        py::arg("spec"), py::arg("a"), py::arg("order") = 128);
    m.def(
        "orbit_span_rank",
        [](const Eigen::VectorXcd& f, double a, int iterations, double rank_tol) {
            return orbit_span_rank(series_from_array(f), a, iterations, rank_tol).ranks;
        },
        py::arg("f"), py::arg("a"), py::arg("iterations"), py::arg("rank_tol") = 1e-10);
    m.def(
        "cesaro_correspondence",
        [](const InnerFunctionSpec& spec, const std::vector<double>& ts, int order) {
            auto c = cesaro_correspondence_check(spec, ts, order);
            return json_to_py(json::parse(correspondence_to_json(c)));
        },
        py::arg("spec"), py::arg("t_samples") = default_t_samples(), py::arg("order") = 256);
}
