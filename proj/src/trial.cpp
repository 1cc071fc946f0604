#include "hkc/trial.hpp"

#include <cstdio>
#include <utility>

#include "hkc/analysis.hpp"
#include "hkc/error.hpp"

namespace hkc {

TrialEngine::TrialEngine(const SocialGraph& g, const OpinionSpace& space, ModelParams params,
                         StoppingSpec stopping, Configuration initial)
    : graph_(&g),
      space_(&space),
      params_(params),
      stopping_(stopping),
      config_(std::move(initial)),
      view_(config_, g, params.tau, space.norm()) {
  params_.validate();
  stopping_.validate(params_.tau);
  if (config_.dim() != space.dim()) throw UsageError("configuration dimension does not match space");
  for (const Edge& e : g.edges()) {
    const double d = distance(config_.opinion(e.u), config_.opinion(e.v), space.norm());
    if (in_stopping_band(d, stopping_.eps, params_.tau)) ++band_edges_;
  }
}

std::size_t TrialEngine::band_edges_at(VertexId x) const {
  std::size_t count = 0;
  for (const VertexId y : graph_->neighbors(x)) {
    const double d = distance(config_.opinion(x), config_.opinion(y), space_->norm());
    if (in_stopping_band(d, stopping_.eps, params_.tau)) ++count;
  }
  return count;
}

std::optional<Transition> TrialEngine::step(RandomStream& rng) {
  const StepResult result = gillespie_step(view_, rng);
  if (std::holds_alternative<Absorbed>(result)) return std::nullopt;
  const Transition t = std::get<Transition>(result);
  band_edges_ -= band_edges_at(t.vertex);
  apply_update_in_place(config_, view_, t.vertex, params_.alpha);
  view_.refresh_vertex(config_, *graph_, params_.tau, space_->norm(), t.vertex);
  band_edges_ += band_edges_at(t.vertex);
  time_ += t.dt;
  ++events_;
  return t;
}

std::uint64_t TrialEngine::advance(RandomStream& rng, std::uint64_t max_steps) {
  std::uint64_t done = 0;
  while (done < max_steps && step(rng)) ++done;
  return done;
}

bool TrialEngine::run_until_stop(RandomStream& rng, std::uint64_t max_steps) {
  std::uint64_t done = 0;
  while (!at_stop() && done < max_steps && step(rng)) ++done;
  return at_stop();
}

namespace {

void write_trace_row(std::ostream& out, std::uint64_t event, double time, VertexId vertex,
                     double x_center, double max_pair) {
  char buf[160];
  const int len = std::snprintf(buf, sizeof buf, "%llu,%.17g,%u,%.17g,%.17g\n",
                                static_cast<unsigned long long>(event), time, vertex, x_center,
                                max_pair);
  out.write(buf, len);
}

}  // namespace

TrialOutcome run_trial(const SocialGraph& g, const OpinionSpace& space,
                       const InitialDistribution& dist, const ModelParams& params,
                       const StoppingSpec& stopping, RandomStream& rng,
                       const TrialOptions& options) {
  params.validate();
  stopping.validate(params.tau);
  validate(dist, space);

  TrialEngine engine(g, space, params, stopping,
                     sample_configuration(g.vertex_count(), space, dist, rng));
  const Norm norm = space.norm();
  const auto x_center = [&] { return total_disagreement(engine.config(), space.center(), norm); };

  TrialOutcome outcome;
  if (options.record_x_samples) outcome.x_samples.push_back({0.0, x_center()});
  if (options.trace != nullptr) *options.trace << kTraceHeader << '\n';

  while (!engine.at_stop() && engine.events() < stopping.max_events) {
    const auto t = engine.step(rng);
    if (!t) break;
    if (options.record_x_samples || options.trace != nullptr) {
      const double x = x_center();
      if (options.record_x_samples) outcome.x_samples.push_back({engine.time(), x});
      if (options.trace != nullptr) {
        write_trace_row(*options.trace, engine.events(), engine.time(), t->vertex, x,
                        max_pair_distance(engine.config(), norm));
      }
    }
  }

  outcome.stopped = engine.at_stop();
  outcome.absorbed = engine.absorbed();
  outcome.stop_time = engine.time();
  outcome.events = engine.events();
  if (outcome.stopped) {
    outcome.consensus = classify_consensus(engine.config(), g, stopping, params.tau, norm);
    if (event_A_applicable(params.tau, space.radius(), stopping.eps_prime)) {
      outcome.event_A = check_event_A(engine.config(), space, params.tau, stopping.eps_prime);
    }
  }
  outcome.final = engine.config();
  return outcome;
}

}  // namespace hkc
