#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "hkc/graph.hpp"
#include "hkc/opinion_space.hpp"
#include "hkc/random.hpp"

namespace hkc {

struct ModelParams {
  double tau = 0.0;    // confidence threshold
  double alpha = 0.0;  // stubbornness
  void validate() const;
};

/// Per-vertex opinions stored contiguously, one row of `dim` reals per vertex.
class Configuration {
 public:
  Configuration() = default;
  Configuration(std::size_t vertex_count, std::size_t dim);
  explicit Configuration(std::span<const OpinionVector> opinions);

  std::size_t vertex_count() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }

  std::span<const double> opinion(VertexId x) const {
    return std::span<const double>(coords_).subspan(std::size_t{x} * dim_, dim_);
  }
  std::span<double> opinion(VertexId x) {
    return std::span<double>(coords_).subspan(std::size_t{x} * dim_, dim_);
  }
  void set(VertexId x, std::span<const double> value);

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

/// Draws every opinion i.i.d. from `dist`, vertices in increasing order.
Configuration sample_configuration(std::size_t vertex_count, const OpinionSpace& space,
                                   const InitialDistribution& dist, RandomStream& rng);

/// Compatible neighbors N(x) = {y ~ x : ||xi(x) - xi(y)|| <= tau} and the
/// update rates |N(x)|. Rates are kept in a Fenwick tree so that rate-weighted
/// vertex selection and single-vertex refreshes are logarithmic.
class CompatibilityView {
 public:
  CompatibilityView(const Configuration& config, const SocialGraph& g, double tau, Norm norm);

  std::size_t vertex_count() const noexcept { return neighbors_.size(); }
  std::span<const VertexId> neighbors(VertexId x) const { return neighbors_.at(x); }
  std::uint64_t rate(VertexId x) const { return neighbors_.at(x).size(); }
  std::uint64_t total_rate() const noexcept { return total_rate_; }

  /// Recomputes compatibility on the edges incident to `x` only, after the
  /// opinion of `x` changed. Equals a full recomputation.
  void refresh_vertex(const Configuration& config, const SocialGraph& g, double tau, Norm norm,
                      VertexId x);

  /// The vertex owning slot `k` when each vertex x owns rate(x) consecutive
  /// slots in id order. Requires k < total_rate().
  VertexId vertex_at(std::uint64_t k) const;

  friend bool operator==(const CompatibilityView& a, const CompatibilityView& b) {
    return a.total_rate_ == b.total_rate_ && a.neighbors_ == b.neighbors_;
  }

 private:
  void add_rate(VertexId x, std::int64_t delta);

  std::vector<std::vector<VertexId>> neighbors_;
  std::vector<std::uint64_t> tree_;  // 1-based Fenwick tree over rates
  std::uint64_t total_rate_ = 0;
};

inline CompatibilityView compatibility(const Configuration& config, const SocialGraph& g,
                                       double tau, Norm norm) {
  return CompatibilityView(config, g, tau, norm);
}

/// Mean opinion of the compatible neighbors of `x`. Throws UsageError when
/// N(x) is empty.
OpinionVector local_average(const Configuration& config, const CompatibilityView& view,
                            VertexId x);

/// xi(x) <- alpha * xi(x) + (1 - alpha) * mean of xi over N(x).
void apply_update_in_place(Configuration& config, const CompatibilityView& view, VertexId x,
                           double alpha);

Configuration apply_update(Configuration config, const CompatibilityView& view, VertexId x,
                           double alpha);

struct Absorbed {
  friend bool operator==(Absorbed, Absorbed) = default;
};
struct Transition {
  double dt;
  VertexId vertex;
};
using StepResult = std::variant<Absorbed, Transition>;

/// Gillespie direct method: holding time ~ Exp(R), vertex with probability
/// rate(x) / R. Absorbed when R = 0.
StepResult gillespie_step(const CompatibilityView& view, RandomStream& rng);

inline constexpr std::uint64_t kDefaultMaxEvents = 10'000'000;

struct StoppingSpec {
  double eps_prime = 0.0;
  double eps = 0.0;  // eps_prime / vertex_count
  std::uint64_t max_events = kDefaultMaxEvents;

  /// Ties eps to eps_prime / vertex_count.
  static StoppingSpec from_eps_prime(double eps_prime, std::size_t vertex_count,
                                     std::uint64_t max_events = kDefaultMaxEvents);
  /// Throws UsageError unless 0 < eps_prime < tau/2 and 0 < eps < tau.
  void validate(double tau) const;
};

/// min(0.01 (tau - rho), tau/4) when tau > rho, otherwise tau/4.
double default_eps_prime(double tau, double rho);

/// True for distances inside the closed band [eps, tau] that blocks stopping.
inline bool in_stopping_band(double d, double eps, double tau) { return d >= eps && d <= tau; }

/// True iff every edge distance lies outside [eps, tau].
bool stop_reached(const Configuration& config, const SocialGraph& g, const StoppingSpec& spec,
                  double tau, Norm norm);

}  // namespace hkc
