#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hkc/dynamics.hpp"
#include "hkc/trial.hpp"

namespace hkc {

struct ExperimentSpec {
  SocialGraph graph;
  OpinionSpace space;
  InitialDistribution init;
  ModelParams params;
  StoppingSpec stopping;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  /// Draws used when E||X - center|| has no closed form.
  std::size_t expectation_samples = 1'000'000;

  void validate() const;
};

/// Stream indices reserved for non-trial randomness.
inline constexpr std::uint64_t kExpectationStream = ~std::uint64_t{0};
inline constexpr std::uint64_t kGraphStream = ~std::uint64_t{0} - 1;

struct Interval {
  double low;
  double high;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for `successes` out of `n` (n > 0).
Interval wilson_interval(std::size_t successes, std::size_t n, double z = kZ95);

/// Fraction of undetermined trials above which a report is flagged.
inline constexpr double kUndeterminedWarningFraction = 0.05;

struct MonteCarloReport {
  std::size_t trials = 0;
  std::size_t consensus_count = 0;
  std::size_t undetermined_count = 0;
  std::size_t absorbed_count = 0;
  std::size_t event_A_count = 0;
  std::size_t event_A_and_consensus_count = 0;
  std::optional<double> p_hat;  // empty when every trial is undetermined
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  double expected_center_distance = 0.0;
  double rho = 0.0;
  std::optional<double> bound;  // empty when tau <= rho
  double mean_stop_time = 0.0;  // over stopped trials
  double mean_events = 0.0;     // over all trials
  bool undetermined_warning = false;
  std::uint64_t master_seed = 0;

  friend bool operator==(const MonteCarloReport&, const MonteCarloReport&) = default;
};

/// Runs every trial; trial i uses RandomStream(master_seed, i). Outcomes are
/// returned in trial order without X samples, independent of `parallelism`.
std::vector<TrialOutcome> run_trials(const ExperimentSpec& spec, std::size_t parallelism);

/// Pure reduction of outcomes in trial order.
MonteCarloReport summarize(const ExperimentSpec& spec, std::span<const TrialOutcome> outcomes);

MonteCarloReport run_estimate(const ExperimentSpec& spec, std::size_t parallelism);

}  // namespace hkc
