#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hkc/analysis.hpp"
#include "hkc/config.hpp"
#include "hkc/invariants.hpp"
#include "hkc/montecarlo.hpp"
#include "hkc/trial.hpp"

namespace py = pybind11;

namespace {

hkc::Norm norm_arg(const std::string& name) { return hkc::parse_norm(name); }

hkc::CliConfig config_arg(const std::string& text, const std::string& base_dir) {
  return hkc::parse_config_text(text, base_dir);
}

std::string simulate(const std::string& config_json, const std::string& base_dir) {
  const hkc::CliConfig config = config_arg(config_json, base_dir);
  const auto& exp = config.experiment;
  hkc::RandomStream rng(exp.master_seed, 0);
  const auto result = hkc::run_trial(exp.graph, exp.space, exp.init, exp.params, exp.stopping, rng);
  return hkc::dump_json(hkc::trial_to_json(result, config));
}

std::string estimate(const std::string& config_json, std::size_t parallel, const std::string& base_dir) {
  const hkc::CliConfig config = config_arg(config_json, base_dir);
  hkc::MonteCarloReport report;
  {
    py::gil_scoped_release release;
    report = hkc::run_estimate(config.experiment, parallel);
  }
  return hkc::dump_json(hkc::report_to_json(report, config));
}

std::string bound(const std::string& config_json, const std::string& base_dir) {
  return hkc::dump_json(hkc::bound_to_json(config_arg(config_json, base_dir)));
}

double generator_drift(const std::vector<std::vector<double>>& opinions,
                       const std::vector<std::pair<hkc::VertexId, hkc::VertexId>>& edges, double tau,
                       const std::string& norm, const std::vector<double>& center) {
  std::vector<hkc::OpinionVector> ops;
  for (const auto& o : opinions) ops.emplace_back(o);
  std::vector<hkc::Edge> es;
  for (const auto& [u, v] : edges) es.push_back({u, v});
  const hkc::SocialGraph g(ops.size(), es);
  return hkc::generator_drift(hkc::Configuration(ops), g, tau, norm_arg(norm), center);
}

py::dict check_invariants(std::size_t cases, std::uint64_t seed) {
  const hkc::DriftCheckResult r = hkc::check_drift_invariants(cases, seed);
  py::dict out;
  out["cases"] = r.cases;
  out["evaluations"] = r.evaluations;
  out["max_drift"] = r.max_drift;
  out["ok"] = !r.violation.has_value();
  return out;
}

}  // namespace

PYBIND11_MODULE(_hkc, m) {
  m.doc() = "Continuous-time Hegselmann-Krause dynamics on graphs";

  py::register_exception<hkc::UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<hkc::ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("distance",
        [](const std::vector<double>& u, const std::vector<double>& v, const std::string& norm) {
          return hkc::distance(u, v, norm_arg(norm));
        },
        py::arg("u"), py::arg("v"), py::arg("norm") = "l2");
  m.def("center_and_radius",
        [](const std::vector<double>& lo, const std::vector<double>& hi, const std::string& norm) {
          const auto [c, r] = hkc::center_and_radius(
              hkc::Box{hkc::OpinionVector(lo), hkc::OpinionVector(hi)}, norm_arg(norm));
          return py::make_tuple(std::vector<double>(c.coords().begin(), c.coords().end()), r);
        },
        py::arg("lo"), py::arg("hi"), py::arg("norm") = "l2", "Chebyshev center and radius of a box");
  m.def("theoretical_bound",
        [](double expected_dist, double tau, double rho) {
          return hkc::theoretical_bound({expected_dist, tau, rho});
        },
        py::arg("expected_dist"), py::arg("tau"), py::arg("rho"));
  m.def("generator_drift", &generator_drift, py::arg("opinions"), py::arg("edges"), py::arg("tau"),
        py::arg("norm"), py::arg("center"));
  m.def("simulate", &simulate, py::arg("config_json"), py::arg("base_dir") = ".",
        "Run trial 0 of a config and return its JSON summary");
  m.def("estimate", &estimate, py::arg("config_json"), py::arg("parallel") = 1, py::arg("base_dir") = ".",
        "Monte Carlo report as JSON");
  m.def("bound", &bound, py::arg("config_json"), py::arg("base_dir") = ".");
  m.def("check_invariants", &check_invariants, py::arg("cases"), py::arg("seed") = 0);
}
