#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "demi/calculus.hpp"
#include "demi/convolution.hpp"
#include "demi/fourier.hpp"
#include "demi/suites.hpp"

namespace py = pybind11;
using namespace demi;

namespace {

std::optional<std::pair<double, double>> as_pair(const std::optional<Interval>& iv) {
    if (!iv) return std::nullopt;
    return std::make_pair(iv->lo, iv->hi);
}

std::string class_name(ClassTag c) {
    switch (c) {
        case ClassTag::Linear: return "linear";
        case ClassTag::L: return "L";
        case ClassTag::K: return "K";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Demi-distributions: test functions, functionals, calculus, Fourier and convolution";

    py::register_exception<PreconditionViolation>(m, "PreconditionViolation", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::class_<QuadratureConfig>(m, "QuadratureConfig")
        .def(py::init<>())
        .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
        .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
        .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
        .def_readwrite("schwartz_truncation_radius", &QuadratureConfig::schwartz_truncation_radius)
        .def_readwrite("seminorm_grid", &QuadratureConfig::seminorm_grid);

    py::class_<TestFunction>(m, "TestFunction")
        .def("__call__", &TestFunction::value, py::arg("x"), py::arg("order") = 0u)
        .def_property_readonly("label", &TestFunction::label)
        .def_property_readonly("support", [](const TestFunction& f) { return as_pair(f.support()); })
        .def_property_readonly("is_compact", &TestFunction::is_compact)
        .def("__repr__", [](const TestFunction& f) { return "<TestFunction " + f.label() + ">"; });

    m.def("zero_function", &zero_function);
    m.def("bump", &make_bump, py::arg("c"), py::arg("h"));
    m.def("gaussian", &make_gaussian, py::arg("c"), py::arg("s"));
    m.def("hermite_gaussian", &make_hermite_gaussian, py::arg("n"), py::arg("c"), py::arg("s"));
    m.def("derivative", py::overload_cast<const TestFunction&, unsigned>(&derivative), py::arg("xi"), py::arg("k") = 1u);
    m.def("translate", &translate, py::arg("xi"), py::arg("x"));
    m.def("combine", py::overload_cast<Complex, const TestFunction&, Complex, const TestFunction&>(&combine));
    m.def("scale", &scale, py::arg("a"), py::arg("xi"));
    m.def("integrate", [](const TestFunction& xi) { return integrate(xi); }, py::arg("xi"));

    py::class_<Multiplier>(m, "Multiplier")
        .def_static("constant", &Multiplier::constant)
        .def_static("polynomial", &Multiplier::polynomial)
        .def_static("cosine", &Multiplier::cosine, py::arg("omega"), py::arg("phase") = 0.0)
        .def_static("from_test_function", &Multiplier::from_test_function)
        .def("scaled", &Multiplier::scaled);

    py::class_<ScalarMap>(m, "ScalarMap")
        .def_static("abs", &ScalarMap::abs)
        .def_static("sin_abs", &ScalarMap::sin_abs)
        .def_static("exp_abs_minus_one", &ScalarMap::exp_abs_minus_one)
        .def_static("sine", &ScalarMap::sine);

    py::class_<DemiDistribution>(m, "DemiDistribution")
        .def("__call__", &DemiDistribution::operator())
        .def_property_readonly("label", &DemiDistribution::label)
        .def_property_readonly("class_tag", [](const DemiDistribution& f) { return class_name(f.class_tag()); })
        .def("to_json", [](const DemiDistribution& f) { return f.to_json().dump(); })
        .def("__repr__", [](const DemiDistribution& f) { return "<DemiDistribution " + f.label() + ">"; });

    py::class_<SpanElement>(m, "SpanElement")
        .def(py::init<DemiDistribution>())
        .def(py::init<std::vector<std::pair<Complex, DemiDistribution>>>())
        .def("__call__", &SpanElement::operator());

    m.def("dirac", &dirac);
    m.def("dirac_derivative", &dirac_derivative, py::arg("k"));
    m.def("regular", [](const Multiplier& g) { return regular(g); }, py::arg("g"));
    m.def("abs_regular", [](const Multiplier& g) { return abs_regular(g); }, py::arg("g"));
    m.def("sin_abs", [] { return sin_abs(); });
    m.def("exp_abs", [] { return exp_abs(); });
    m.def("compose", &compose, py::arg("h"), py::arg("f"));

    m.def("derivative_functional", py::overload_cast<const DemiDistribution&, unsigned>(&derivative_functional),
          py::arg("f"), py::arg("k") = 1u);
    m.def("projection_A", [](const TestFunction& xi, const TestFunction& z) { return projection_A(xi, z); });
    m.def("primitive_T", [](const TestFunction& xi, const TestFunction& z) { return primitive_T(xi, z); });
    m.def("normalized", [](const TestFunction& xi) { return normalized(xi); });
    m.def("solve_homogeneous", [](const DemiDistribution& f0, const TestFunction& xi0) { return solve_homogeneous(f0, xi0); });
    m.def("solve_inhomogeneous", [](const DemiDistribution& f, const TestFunction& z) { return solve_inhomogeneous(f, z); });
    m.def(
        "estimate_support",
        [](const DemiDistribution& f, double lo, double hi, double resolution) {
            std::vector<std::pair<double, double>> out;
            for (const auto& iv : estimate_support(f, {lo, hi}, resolution)) out.emplace_back(iv.lo, iv.hi);
            return out;
        },
        py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("resolution") = 0.05);

    py::class_<TransformFunction>(m, "TransformFunction")
        .def("__call__", &TransformFunction::operator())
        .def_property_readonly("label", &TransformFunction::label);
    py::class_<TransformFunctional>(m, "TransformFunctional").def("__call__", &TransformFunctional::operator());
    m.def("fourier_test", [](const TestFunction& xi) { return fourier_test(xi); });
    m.def("inverse_fourier_test", [](const TransformFunction& z) { return inverse_fourier_test(z); });
    m.def("fourier_functional", [](const DemiDistribution& f) { return fourier_functional(f); });
    m.def("sine_of_mean", [] { return sine_of_mean(); });

    py::class_<ConvolutionMultiplier>(m, "ConvolutionMultiplier")
        .def_static("dirac", &ConvolutionMultiplier::dirac)
        .def_static("dirac_derivative", &ConvolutionMultiplier::dirac_derivative)
        .def_static("compact_regular", [](const TestFunction& g) { return ConvolutionMultiplier::compact_regular(g); })
        .def_static("mollifier", [](int k) { return ConvolutionMultiplier::mollifier(k); })
        .def_property_readonly("label", &ConvolutionMultiplier::label);
    m.def("convolve_test", &convolve_test, py::arg("f0"), py::arg("xi"));
    m.def("convolve_functional",
          py::overload_cast<const ConvolutionMultiplier&, const DemiDistribution&>(&convolve_functional), py::arg("f0"),
          py::arg("f"));

    m.def("suite_ids", [] {
        std::vector<std::string> ids;
        for (const auto& s : registry()) ids.push_back(s.id);
        return ids;
    });
    m.def("describe_suite", &describe_suite);
    m.def(
        "run_suites_json",
        [](const std::string& config) {
            const SuiteConfig cfg = SuiteConfig::from_json(Json::parse(config));
            cfg.validate();
            std::vector<CheckResult> results;
            {
                py::gil_scoped_release release;
                results = run_suites(cfg);
            }
            return report_json(results).dump();
        },
        py::arg("config") = "{}");
}
