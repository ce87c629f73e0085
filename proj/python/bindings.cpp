#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "convpow/errors.hpp"
#include "convpow/io.hpp"
#include "convpow/kernel_bounds.hpp"
#include "convpow/maximal.hpp"
#include "convpow/measure.hpp"
#include "convpow/parallel.hpp"
#include "convpow/report.hpp"
#include "convpow/spectral.hpp"
#include "convpow/tail.hpp"
#include "convpow/zoo.hpp"

namespace py = pybind11;
using namespace convpow;

namespace {

MeasureSpec spec_from_string(const std::string& text) { return spec_from_json(parse_json(text)); }

std::vector<double> weights_of(const LatticeMeasure& mu) { return {mu.weights().begin(), mu.weights().end()}; }

py::dict fit_dict(const BoundFit& fit) {
  py::dict d;
  d["regime"] = fit.regime;
  d["fitted_constant"] = fit.fitted_constant;
  d["worst_tuple"] = py::make_tuple(fit.worst_tuple[0], fit.worst_tuple[1], fit.worst_tuple[2]);
  d["worst_t"] = fit.worst_t;
  d["sample_count"] = fit.sample_count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_convpow, m) {
  m.doc() = "Convolution powers of lattice probability measures: transforms, tails, kernel bounds";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<PrecisionError>(m, "PrecisionError", base.ptr());
  py::register_exception<DiagnosticRefused>(m, "DiagnosticRefused", base.ptr());
  py::register_exception<HypothesisFailure>(m, "HypothesisFailure", base.ptr());
  py::register_exception<EmptyRegime>(m, "EmptyRegime", base.ptr());

  py::class_<LatticeMeasure>(m, "LatticeMeasure")
      .def(py::init([](std::int64_t offset, std::vector<double> weights, double tail) {
             return LatticeMeasure(offset, std::move(weights), tail);
           }),
           py::arg("offset"), py::arg("weights"), py::arg("tail_mass") = 0.0)
      .def_static("atom", &LatticeMeasure::atom)
      .def_property_readonly("offset", &LatticeMeasure::offset)
      .def_property_readonly("last", &LatticeMeasure::last)
      .def_property_readonly("weights", &weights_of)
      .def_property_readonly("tail_mass", &LatticeMeasure::tail_mass)
      .def_property_readonly("truncation_radius", [](const LatticeMeasure& mu) { return mu.truncation().radius; })
      .def_property_readonly("truncation_deficit", [](const LatticeMeasure& mu) { return mu.truncation().deficit; })
      .def("__call__", &LatticeMeasure::operator())
      .def("__len__", &LatticeMeasure::size)
      .def("support", &LatticeMeasure::support)
      .def("is_symmetric", &LatticeMeasure::is_symmetric)
      .def("__eq__", [](const LatticeMeasure& a, const LatticeMeasure& b) { return a == b; })
      .def("__repr__", [](const LatticeMeasure& mu) {
        return "<LatticeMeasure [" + std::to_string(mu.offset()) + ", " + std::to_string(mu.last()) + "]>";
      });

  m.def("expectation", &expectation);
  m.def("moment", [](const LatticeMeasure& mu, double p) { return moment(mu, p).value; });
  m.def("convolve", &convolve);
  m.def("convolve_fast", &convolve_fast);
  m.def(
      "convolution_power",
      [](const LatticeMeasure& mu, std::int64_t n, const std::string& method) {
        if (method != "fast" && method != "direct") throw InvalidInput("method must be 'fast' or 'direct'");
        return convolution_power(mu, n, method == "fast" ? PowerMethod::fast : PowerMethod::direct);
      },
      py::arg("mu"), py::arg("n"), py::arg("method") = "fast");
  m.def("strictly_aperiodic", &strictly_aperiodic);
  m.def("set_thread_limit", &parallel::set_thread_limit);

  m.def("power_law", &power_law, py::arg("beta"), py::arg("K"));
  m.def("lazy_walk", &lazy_walk);
  m.def("log_squared_measure", &log_squared_measure, py::arg("K"));
  m.def("mixture", &mixture, py::arg("a1"), py::arg("eta"), py::arg("nu"));
  m.def(
      "atoms",
      [](const std::vector<std::int64_t>& points, const std::vector<double>& weights) {
        return atoms(points, weights);
      },
      py::arg("points"), py::arg("weights"));
  m.def("build_measure", [](const std::string& spec_json) { return build_measure(spec_from_string(spec_json)); },
        py::arg("spec_json"));
  m.def("normalize_spec", [](const std::string& spec_json) { return spec_to_json(spec_from_string(spec_json)).dump(); },
        py::arg("spec_json"));

  py::class_<SpectralProfile>(m, "SpectralProfile")
      .def_readonly("t", &SpectralProfile::t)
      .def_readonly("theta", &SpectralProfile::theta)
      .def_readonly("d1", &SpectralProfile::d1)
      .def_readonly("d2", &SpectralProfile::d2)
      .def_readonly("phi", &SpectralProfile::phi)
      .def_readonly("spacing", &SpectralProfile::spacing)
      .def("__len__", &SpectralProfile::size);

  m.def("transform_at", &transform_at, py::arg("mu"), py::arg("t"));
  m.def(
      "make_profile",
      [](const LatticeMeasure& mu, std::size_t points) {
        GridOptions g;
        g.points = points;
        return make_profile(mu, g);
      },
      py::arg("mu"), py::arg("points") = 65537);
  m.def("angular_ratio_sup", [](const SpectralProfile& p) {
    const AngularRatio a = angular_ratio_sup(p);
    py::dict d;
    d["value"] = a.value;
    d["argmax_t"] = a.argmax_t;
    d["unbounded"] = a.unbounded;
    return d;
  });
  m.def("petrov_constant", &petrov_constant);
  m.def("majorant_k_star", [](const SpectralProfile& p, double delta) { return majorant_fit(p, delta).k_star; });
  m.def(
      "lemma_integrals",
      [](const std::function<double(double)>& phi, double k, double delta, const std::vector<std::int64_t>& ns) {
        const LemmaIntegrals li = lemma_integrals(phi, k, delta, ns);
        return py::make_tuple(li.j1, li.j2);
      },
      py::arg("phi"), py::arg("k"), py::arg("delta"), py::arg("n_values"));

  m.def(
      "growth_exponent",
      [](const LatticeMeasure& mu) {
        return growth_exponent(partial_second_moment_curve(mu, default_growth_n(mu))).exponent;
      });
  m.def("partial_second_moments", [](const LatticeMeasure& mu, const std::vector<std::int64_t>& ns) {
    return partial_second_moment_curve(mu, ns).s_values;
  });
  m.def("lipschitz_exponent", [](const SpectralProfile& p) { return lipschitz_exponent_estimate(p).exponent; });

  m.def(
      "kernel_row",
      [](const LatticeMeasure& mu, std::int64_t n, std::int64_t x_max) {
        const std::vector<std::int64_t> ns = {n};
        const KernelTable t = kernel_table(mu, ns, x_max);
        std::vector<double> row;
        for (std::int64_t x = -x_max; x <= x_max; ++x) row.push_back(t.at(0, x));
        return row;
      },
      py::arg("mu"), py::arg("n"), py::arg("x_max"));
  m.def(
      "smoothness_fit",
      [](const LatticeMeasure& mu, std::int64_t n_max, std::int64_t x_max, double delta, double alpha) {
        const KernelTable t = kernel_table(mu, default_kernel_n(mu, n_max), x_max);
        const SmoothnessFits f = smoothness_difference_fit(t, delta, alpha);
        return py::make_tuple(fit_dict(f.large_n), fit_dict(f.global));
      },
      py::arg("mu"), py::arg("n_max"), py::arg("x_max"), py::arg("delta") = 1.0, py::arg("alpha") = 1.0);
  m.def("small_n_sigma", &small_n_sigma);

  m.def(
      "maximal_function",
      [](const LatticeMeasure& mu, std::int64_t offset, std::vector<double> phi, std::int64_t n_max) {
        const LatticeSequence s = maximal_function(mu, LatticeSequence{offset, std::move(phi)}, n_max);
        return py::make_tuple(s.offset, s.values);
      },
      py::arg("mu"), py::arg("offset"), py::arg("phi"), py::arg("n_max"));
  m.def(
      "weak_type_counts",
      [](std::int64_t offset, std::vector<double> m_phi, double norm, const std::vector<double>& lambdas) {
        const LevelSetCurve c = weak_type_curve(LatticeSequence{offset, std::move(m_phi)}, norm, lambdas);
        return py::make_tuple(c.lambda_values, c.counts, c.constants);
      });

  m.def(
      "analyze_report",
      [](const std::string& spec_json, std::size_t grid_points) {
        AnalyzeOptions o;
        o.grid.points = grid_points;
        return strip_volatile(analyze_report(spec_from_string(spec_json), o).json).dump();
      },
      py::arg("spec_json"), py::arg("grid_points") = 65537);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv = {"convpow"};
        for (const auto& a : args) argv.push_back(a.c_str());
        return run_cli(static_cast<int>(argv.size()), argv.data());
      },
      py::arg("args"));
  m.attr("__version__") = kToolVersion;
}
