#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gpcq/error.hpp"
#include "gpcq/io.hpp"
#include "gpcq/pipeline.hpp"
#include "gpcq/surrogate.hpp"

namespace py = pybind11;
using namespace gpcq;

namespace {

std::vector<double> to_doubles(const std::vector<long double>& v) { return {v.begin(), v.end()}; }

}  // namespace

PYBIND11_MODULE(_gpcq, m) {
  m.doc() = "Data-driven orthonormal polynomial bases and Gauss quadrature";

  static py::exception<NumericalError> numerical(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NumericalError& e) {
      numerical(e.what());
    } catch (const IoError& e) {
      PyErr_SetString(PyExc_OSError, e.what());
    } catch (const InvalidInput& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::enum_<Variant>(m, "Variant")
      .value("cubic", Variant::Cubic)
      .value("rational", Variant::Rational);

  py::class_<TransformParams>(m, "Transform")
      .def(py::init<double, double, double>(), py::arg("a") = 0.0, py::arg("b") = 1.0,
           py::arg("delta") = 0.0)
      .def_readonly("a", &TransformParams::a)
      .def_readonly("b", &TransformParams::b)
      .def_readonly("delta", &TransformParams::delta)
      .def("forward", &TransformParams::forward)
      .def("inverse", &TransformParams::inverse)
      .def("__repr__", [](const TransformParams& t) {
        return "Transform(a=" + std::to_string(t.a) + ", b=" + std::to_string(t.b) + ")";
      });

  py::class_<DensityModel>(m, "DensityModel")
      .def_property_readonly("variant", &DensityModel::variant)
      .def_property_readonly("transform", &DensityModel::transform)
      .def_property_readonly("knots_x", [](const DensityModel& d) {
        const auto x = d.knots().x();
        return std::vector<double>(x.begin(), x.end());
      })
      .def_property_readonly("knots_y", [](const DensityModel& d) {
        const auto y = d.knots().y();
        return std::vector<double>(y.begin(), y.end());
      })
      .def_property_readonly("slopes", [](const DensityModel& d) {
        const auto s = d.slopes();
        return std::vector<double>(s.begin(), s.end());
      })
      .def("cdf", py::vectorize(&DensityModel::cdf), "CDF on the normalized coordinate")
      .def("pdf", py::vectorize(&DensityModel::pdf), "Density on the normalized coordinate")
      .def("inverse_cdf", [](const DensityModel& d, double y) { return d.inverse_cdf(y).x; })
      .def("check", [](const DensityModel& d, std::size_t grid) { return check_model(d, grid).failures; },
           py::arg("grid") = 100000, "List of failed invariant checks (empty when consistent)");

  m.def("fit",
        [](const std::vector<double>& x, const std::vector<double>& y, Variant variant,
           const TransformParams& transform) { return fit(variant, MonotoneData(x, y), transform); },
        py::arg("x"), py::arg("y"), py::arg("variant") = Variant::Cubic,
        py::arg("transform") = TransformParams::identity(),
        "Fit a monotone CDF model through normalized points");

  m.def("fit_samples",
        [](const std::vector<double>& samples, Variant variant, int points, double delta) {
          const PreparedPoints p = prepare_points(samples, {points, delta});
          return fit(variant, p.points, p.transform);
        },
        py::arg("samples"), py::arg("variant") = Variant::Cubic, py::arg("m") = 45,
        py::arg("delta") = 0.0, "Transform, ECDF point selection and fit in one call");

  m.def("synthetic_samples",
        [](std::size_t count, std::uint64_t seed) { return sample(synthetic_model(), count, seed).values; },
        py::arg("count"), py::arg("seed") = 1, "Outputs of the built-in surrogate model");

  m.def("moments",
        [](const DensityModel& d, int kmax) { return to_doubles(compute_moments(d, kmax).values); },
        py::arg("model"), py::arg("kmax"));

  m.def("recurrence",
        [](const DensityModel& d, int degree) {
          const RecurrenceResult r = compute_recurrence(compute_moments(d, 2 * degree + 1), degree);
          py::dict out;
          out["gamma"] = to_doubles(r.rec.gamma);
          out["kappa"] = to_doubles(r.rec.kappa);
          std::vector<std::vector<double>> phi;
          for (const auto& c : r.basis.phi) phi.push_back(to_doubles(c));
          out["phi"] = phi;
          out["ill_conditioned"] = r.diagnostics.ill_conditioned;
          return out;
        },
        py::arg("model"), py::arg("degree"),
        "Recurrence coefficients and orthonormal basis (coefficients lowest degree first)");

  m.def("quadrature",
        [](const DensityModel& d, int degree) {
          const GpcResult g = build_gpc(d, degree);
          return py::make_tuple(g.rule.nodes, g.rule.weights, g.epsilon);
        },
        py::arg("model"), py::arg("degree"), "(nodes, weights, orthonormality error)");

  m.def("sample", &sample_density, py::arg("model"), py::arg("count"), py::arg("seed") = 1,
        "Inverse-CDF draws in original coordinates");
  m.def("save", &save_density, py::arg("path"), py::arg("model"));
  m.def("load", &load_density, py::arg("path"));
  m.attr("MAX_DEGREE") = kMaxDegree;
}
