#include "hkc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "hkc/analysis.hpp"
#include "hkc/error.hpp"

namespace hkc {

namespace {

// Neumaier's variant of compensated summation.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

void ExperimentSpec::validate() const {
  params.validate();
  stopping.validate(params.tau);
  hkc::validate(init, space);
  if (trials == 0) throw UsageError("trials must be >= 1");
  const double expected_eps = stopping.eps_prime / static_cast<double>(graph.vertex_count());
  if (std::abs(stopping.eps - expected_eps) > 1e-15 * expected_eps) {
    throw UsageError("eps must equal eps_prime / vertex_count");
  }
}

Interval wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) throw UsageError("wilson_interval: n must be positive");
  if (successes > n) throw UsageError("wilson_interval: successes exceed trials");
  const auto nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

std::vector<TrialOutcome> run_trials(const ExperimentSpec& spec, std::size_t parallelism) {
  spec.validate();
  if (parallelism == 0) throw UsageError("parallelism must be >= 1");
  std::vector<TrialOutcome> outcomes(spec.trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const TrialOptions options{.record_x_samples = false, .trace = nullptr};

  const auto worker = [&] {
    for (std::size_t i = next++; i < spec.trials; i = next++) {
      try {
        RandomStream rng(spec.master_seed, i);
        outcomes[i] = run_trial(spec.graph, spec.space, spec.init, spec.params, spec.stopping, rng,
                                options);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = spec.trials;
      }
    }
  };

  const std::size_t workers = std::min(parallelism, spec.trials);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return outcomes;
}

MonteCarloReport summarize(const ExperimentSpec& spec, std::span<const TrialOutcome> outcomes) {
  MonteCarloReport report;
  report.trials = outcomes.size();
  report.master_seed = spec.master_seed;
  CompensatedSum stop_time;
  CompensatedSum events;
  std::size_t stopped = 0;
  for (const TrialOutcome& t : outcomes) {
    events.add(static_cast<double>(t.events));
    if (!t.stopped) {
      ++report.undetermined_count;
      continue;
    }
    ++stopped;
    stop_time.add(t.stop_time);
    if (t.absorbed) ++report.absorbed_count;
    const bool consensus = t.consensus.value_or(false);
    if (consensus) ++report.consensus_count;
    if (t.event_A.value_or(false)) {
      ++report.event_A_count;
      if (consensus) ++report.event_A_and_consensus_count;
    }
  }
  if (stopped > 0) {
    report.p_hat = static_cast<double>(report.consensus_count) / static_cast<double>(stopped);
    const Interval ci = wilson_interval(report.consensus_count, stopped);
    report.ci_low = ci.low;
    report.ci_high = ci.high;
    report.mean_stop_time = stop_time.value() / static_cast<double>(stopped);
  }
  if (report.trials > 0) report.mean_events = events.value() / static_cast<double>(report.trials);
  report.undetermined_warning = static_cast<double>(report.undetermined_count) >
                                kUndeterminedWarningFraction * static_cast<double>(report.trials);

  RandomStream rng(spec.master_seed, kExpectationStream);
  report.expected_center_distance =
      expected_center_distance(spec.init, spec.space, spec.expectation_samples, rng);
  report.rho = spec.space.radius();
  if (bound_applicable(spec.params.tau, report.rho)) {
    report.bound = theoretical_bound({report.expected_center_distance, spec.params.tau, report.rho});
  }
  return report;
}

MonteCarloReport run_estimate(const ExperimentSpec& spec, std::size_t parallelism) {
  const auto outcomes = run_trials(spec, parallelism);
  return summarize(spec, outcomes);
}

}  // namespace hkc
