#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "hkc/dynamics.hpp"

namespace hkc {

/// One running realisation of the process. Keeps the compatibility view and
/// the number of edges inside the stopping band up to date incrementally.
/// `g` and `space` must outlive the engine.
class TrialEngine {
 public:
  TrialEngine(const SocialGraph& g, const OpinionSpace& space, ModelParams params,
              StoppingSpec stopping, Configuration initial);

  bool at_stop() const noexcept { return band_edges_ == 0; }
  bool absorbed() const noexcept { return view_.total_rate() == 0; }

  /// Performs one event; std::nullopt when absorbed.
  std::optional<Transition> step(RandomStream& rng);

  /// Performs up to `max_steps` events, returning how many happened.
  std::uint64_t advance(RandomStream& rng, std::uint64_t max_steps);

  /// Steps until stopped, absorbed, or `max_steps` events; returns at_stop().
  bool run_until_stop(RandomStream& rng, std::uint64_t max_steps);

  double time() const noexcept { return time_; }
  std::uint64_t events() const noexcept { return events_; }
  std::size_t band_edges() const noexcept { return band_edges_; }
  const Configuration& config() const noexcept { return config_; }
  const CompatibilityView& view() const noexcept { return view_; }

 private:
  std::size_t band_edges_at(VertexId x) const;

  const SocialGraph* graph_;
  const OpinionSpace* space_;
  ModelParams params_;
  StoppingSpec stopping_;
  Configuration config_;
  CompatibilityView view_;
  std::size_t band_edges_ = 0;
  double time_ = 0.0;
  std::uint64_t events_ = 0;
};

struct XSample {
  double time;
  double value;  // total disagreement with the center
  friend bool operator==(const XSample&, const XSample&) = default;
};

struct TrialOutcome {
  bool stopped = false;   // T_eps reached within max_events
  bool absorbed = false;  // total rate hit zero
  double stop_time = 0.0;
  std::uint64_t events = 0;
  std::optional<bool> consensus;  // empty when not stopped
  std::optional<bool> event_A;    // empty when not stopped or not applicable
  Configuration final;
  std::vector<XSample> x_samples;

  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

struct TrialOptions {
  bool record_x_samples = true;
  /// When set, receives the trajectory CSV.
  std::ostream* trace = nullptr;
};

/// Header of the trajectory CSV.
inline constexpr const char* kTraceHeader = "event,time,vertex,x_center,max_pair_dist";

TrialOutcome run_trial(const SocialGraph& g, const OpinionSpace& space,
                       const InitialDistribution& dist, const ModelParams& params,
                       const StoppingSpec& stopping, RandomStream& rng,
                       const TrialOptions& options = {});

}  // namespace hkc
