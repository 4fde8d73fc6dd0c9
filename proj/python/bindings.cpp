#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "isohyp/cli.hpp"
#include "isohyp/density.hpp"
#include "isohyp/functionals.hpp"
#include "isohyp/generating_curve.hpp"
#include "isohyp/hopf_reduction.hpp"
#include "isohyp/lemma_lab.hpp"
#include "isohyp/optimizer.hpp"

namespace py = pybind11;
using namespace isohyp;

namespace {

// JSON crosses the boundary as text; the Python side decodes it.
py::tuple run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"isohyp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
        py::gil_scoped_release release;
        code = run_cli(int(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_isohyp, m) {
    m.doc() = "Weighted isoperimetric lab in hyperbolic space";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<RadialDensity>(m, "RadialDensity")
        .def_static("cosh_power", &RadialDensity::cosh_power, py::arg("exponent"))
        .def_static("even_polynomial", &RadialDensity::even_polynomial, py::arg("coeffs"))
        .def_static("scaled_quadratic", &RadialDensity::scaled_quadratic, py::arg("c"))
        .def_static("parse", [](const std::string& s) { return parse_density(s); }, py::arg("spec"))
        .def("h", &RadialDensity::h, py::arg("s"))
        .def("dh", &RadialDensity::dh, py::arg("s"))
        .def("derivative", &RadialDensity::derivative, py::arg("s"), py::arg("order"))
        .def("is_strict", [](const RadialDensity& d) { return validate_strict(d).pass; })
        .def("__repr__", &RadialDensity::describe);

    py::class_<BallQuantities>(m, "BallQuantities")
        .def_readonly("Pf", &BallQuantities::Pf)
        .def_readonly("Vf", &BallQuantities::Vf)
        .def_readonly("Hf", &BallQuantities::Hf);
    m.def("ball_quantities", &ball_quantities, py::arg("n"), py::arg("density"), py::arg("tau"));
    m.def("ball_radius_for_volume", &ball_radius_for_volume, py::arg("n"), py::arg("density"), py::arg("v"));

    py::class_<PolarProfile>(m, "PolarProfile")
        .def(py::init<std::vector<double>, int>(), py::arg("coeffs"), py::arg("n"))
        .def_static("constant", &PolarProfile::constant, py::arg("tau"), py::arg("n"), py::arg("K") = 0)
        .def("rho", &PolarProfile::rho, py::arg("theta"))
        .def_property_readonly("coeffs", [](const PolarProfile& p) { return p.coeffs(); })
        .def_property_readonly("n", &PolarProfile::n);
    m.def("translated_ball_profile", &translated_ball_profile, py::arg("n"), py::arg("tau"), py::arg("c"),
          py::arg("K"));

    py::class_<FunctionalResult>(m, "FunctionalResult")
        .def_readonly("Pf", &FunctionalResult::Pf)
        .def_readonly("Vf", &FunctionalResult::Vf)
        .def_readonly("err", &FunctionalResult::err);
    m.def("profile_functionals", &profile_functionals, py::arg("profile"), py::arg("density"));

    m.def("lambda_for_ball", &lambda_for_ball, py::arg("n"), py::arg("density"), py::arg("tau"));
    m.def(
        "shoot_classify",
        [](int n, const RadialDensity& d, double lambda, double start_t) {
            ShootingConfig cfg;
            cfg.n = n;
            cfg.density = d;
            cfg.lambda = lambda;
            cfg.start_t = start_t;
            const Trajectory traj = shoot(cfg);
            const Classification c = classify(traj);
            py::dict r;
            r["class"] = to_string(c.kind);
            r["termination"] = to_string(traj.termination);
            r["closed"] = traj.closure.closed;
            r["closing_angle_defect"] = traj.closure.closing_angle_defect;
            r["max_radius_deviation"] = c.max_radius_deviation;
            r["ordered_triple"] = c.ordered_triple;
            return r;
        },
        py::arg("n"), py::arg("density"), py::arg("lambda_"), py::arg("start_t"));

    m.def(
        "hopf_crosscheck",
        [](const std::string& field, int m_, double tau) {
            const Crosscheck c = crosscheck(SpaceParams::make(parse_field(field), m_), tau);
            return py::make_tuple(c.relerr_P, c.relerr_V);
        },
        py::arg("field"), py::arg("m"), py::arg("tau"));

    m.def("_run_cli", &run, py::arg("args"));
}
