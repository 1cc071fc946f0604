// Command-line front end: simulate, estimate, bound, check-invariants.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hkc/analysis.hpp"
#include "hkc/config.hpp"
#include "hkc/invariants.hpp"
#include "hkc/montecarlo.hpp"
#include "hkc/trial.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

hkc::CliConfig load(const std::string& path) {
  return hkc::load_config_file(path, hkc::seed_from_env());
}

int cmd_simulate(const std::string& config_path, const std::string& trace_path) {
  const hkc::CliConfig config = load(config_path);
  const auto& exp = config.experiment;
  std::ofstream trace;
  hkc::TrialOptions options;
  if (!trace_path.empty()) {
    trace.open(trace_path, std::ios::binary | std::ios::trunc);
    if (!trace) {
      std::cerr << "error: cannot open trace file '" << trace_path << "'\n";
      return kExitUsage;
    }
    options.trace = &trace;
  }
  hkc::RandomStream rng(exp.master_seed, 0);
  const hkc::TrialOutcome outcome =
      hkc::run_trial(exp.graph, exp.space, exp.init, exp.params, exp.stopping, rng, options);
  std::cout << hkc::dump_json(hkc::trial_to_json(outcome, config)) << '\n';
  return kExitOk;
}

int cmd_estimate(const std::string& config_path, std::size_t parallel) {
  const hkc::CliConfig config = load(config_path);
  const hkc::MonteCarloReport report = hkc::run_estimate(config.experiment, parallel);
  std::cout << hkc::dump_json(hkc::report_to_json(report, config)) << '\n';
  return kExitOk;
}

int cmd_bound(const std::string& config_path) {
  const hkc::CliConfig config = load(config_path);
  std::cout << hkc::dump_json(hkc::bound_to_json(config)) << '\n';
  return kExitOk;
}

hkc::ordered_json case_to_json(const hkc::DriftCase& c) {
  hkc::ordered_json edges = hkc::ordered_json::array();
  for (const auto& e : c.graph.edges()) edges.push_back({e.u, e.v});
  hkc::ordered_json opinions = hkc::ordered_json::array();
  for (hkc::VertexId x = 0; x < c.config.vertex_count(); ++x) {
    const auto op = c.config.opinion(x);
    opinions.push_back(std::vector<double>(op.begin(), op.end()));
  }
  hkc::ordered_json centers = hkc::ordered_json::array();
  for (const auto& center : c.centers) {
    centers.push_back(std::vector<double>(center.coords().begin(), center.coords().end()));
  }
  return {{"vertex_count", c.graph.vertex_count()},
          {"edges", std::move(edges)},
          {"norm", std::string(hkc::to_string(c.norm))},
          {"tau", c.tau},
          {"opinions", std::move(opinions)},
          {"centers", std::move(centers)}};
}

int cmd_check_invariants(std::size_t cases, std::uint64_t seed) {
  const hkc::DriftCheckResult result = hkc::check_drift_invariants(cases, seed);
  hkc::ordered_json out;
  out["cases"] = result.cases;
  out["evaluations"] = result.evaluations;
  out["max_drift"] = result.max_drift;
  out["tolerance"] = hkc::kDriftTolerance;
  out["seed"] = seed;
  out["ok"] = !result.violation.has_value();
  if (result.violation) {
    out["violation"] = {{"case_index", result.violation->case_index},
                        {"drift", result.violation->drift},
                        {"minimized_case", case_to_json(result.violation->minimized)}};
  }
  std::cout << hkc::dump_json(out) << '\n';
  return result.violation ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time Hegselmann-Krause simulator and consensus-bound harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string trace_path;
  std::size_t parallel = 1;
  std::size_t cases = 0;
  std::uint64_t seed = 0;

  auto* simulate = app.add_subcommand("simulate", "Run one trial and print its summary as JSON");
  simulate->add_option("config", config_path, "JSON config file")->required();
  simulate->add_option("--trace", trace_path, "Write the trajectory CSV to FILE");

  auto* estimate = app.add_subcommand("estimate", "Monte Carlo estimate of the consensus probability");
  estimate->add_option("config", config_path, "JSON config file")->required();
  estimate->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);

  auto* bound = app.add_subcommand("bound", "Print the lower bound for a config without simulating");
  bound->add_option("config", config_path, "JSON config file")->required();

  auto* check = app.add_subcommand("check-invariants", "Random search for positive generator drift");
  check->add_option("--cases", cases, "Number of random cases")->required();
  check->add_option("--seed", seed, "Seed of the case generator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, trace_path);
    if (*estimate) return cmd_estimate(config_path, parallel);
    if (*bound) return cmd_bound(config_path);
    if (*check) {
      if (cases == 0) {
        std::cerr << "error: --cases must be >= 1\n";
        return kExitUsage;
      }
      return cmd_check_invariants(cases, seed);
    }
  } catch (const hkc::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}
