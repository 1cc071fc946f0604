#include "hkc/dynamics.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "hkc/error.hpp"

namespace hkc {

void ModelParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw UsageError("tau must be positive and finite");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw UsageError("alpha must lie in [0, 1]");
}

Configuration::Configuration(std::size_t vertex_count, std::size_t dim)
    : dim_(dim), coords_(vertex_count * dim, 0.0) {
  if (dim == 0) throw UsageError("configuration dimension must be positive");
}

Configuration::Configuration(std::span<const OpinionVector> opinions) {
  if (opinions.empty()) throw UsageError("configuration needs at least one opinion");
  dim_ = opinions.front().size();
  if (dim_ == 0) throw UsageError("configuration dimension must be positive");
  coords_.reserve(opinions.size() * dim_);
  for (const auto& op : opinions) {
    if (op.size() != dim_) throw UsageError("configuration: opinions of mixed dimension");
    coords_.insert(coords_.end(), op.coords().begin(), op.coords().end());
  }
}

void Configuration::set(VertexId x, std::span<const double> value) {
  if (value.size() != dim_) throw UsageError("configuration: opinion dimension mismatch");
  if (x >= vertex_count()) throw UsageError("configuration: vertex id out of range");
  std::copy(value.begin(), value.end(), opinion(x).begin());
}

Configuration sample_configuration(std::size_t vertex_count, const OpinionSpace& space,
                                   const InitialDistribution& dist, RandomStream& rng) {
  Configuration config(vertex_count, space.dim());
  for (VertexId x = 0; x < vertex_count; ++x) sample_initial_into(dist, space, rng, config.opinion(x));
  return config;
}

CompatibilityView::CompatibilityView(const Configuration& config, const SocialGraph& g, double tau,
                                     Norm norm)
    : neighbors_(g.vertex_count()), tree_(g.vertex_count() + 1, 0) {
  if (config.vertex_count() != g.vertex_count()) {
    throw UsageError("configuration does not match the graph's vertex count");
  }
  // Edges come in lexicographic order, so every list is built sorted.
  for (const Edge& e : g.edges()) {
    if (distance(config.opinion(e.u), config.opinion(e.v), norm) <= tau) {
      neighbors_[e.u].push_back(e.v);
      neighbors_[e.v].push_back(e.u);
    }
  }
  for (VertexId x = 0; x < neighbors_.size(); ++x) {
    add_rate(x, static_cast<std::int64_t>(neighbors_[x].size()));
  }
}

void CompatibilityView::add_rate(VertexId x, std::int64_t delta) {
  total_rate_ = static_cast<std::uint64_t>(static_cast<std::int64_t>(total_rate_) + delta);
  for (std::size_t i = std::size_t{x} + 1; i < tree_.size(); i += i & (~i + 1)) {
    tree_[i] = static_cast<std::uint64_t>(static_cast<std::int64_t>(tree_[i]) + delta);
  }
}

void CompatibilityView::refresh_vertex(const Configuration& config, const SocialGraph& g,
                                       double tau, Norm norm, VertexId x) {
  auto& own = neighbors_.at(x);
  for (const VertexId y : g.neighbors(x)) {
    const bool now = distance(config.opinion(x), config.opinion(y), norm) <= tau;
    const auto it = std::lower_bound(own.begin(), own.end(), y);
    const bool before = it != own.end() && *it == y;
    if (now == before) continue;
    auto& theirs = neighbors_[y];
    const auto jt = std::lower_bound(theirs.begin(), theirs.end(), x);
    if (now) {
      own.insert(it, y);
      theirs.insert(jt, x);
      add_rate(x, 1);
      add_rate(y, 1);
    } else {
      own.erase(it);
      theirs.erase(jt);
      add_rate(x, -1);
      add_rate(y, -1);
    }
  }
}

VertexId CompatibilityView::vertex_at(std::uint64_t k) const {
  if (k >= total_rate_) throw UsageError("vertex_at: slot beyond total rate");
  // Fenwick descent for the first position whose prefix sum exceeds k.
  std::size_t pos = 0;
  for (std::size_t step = std::bit_floor(tree_.size() - 1); step > 0; step >>= 1) {
    const std::size_t next = pos + step;
    if (next < tree_.size() && tree_[next] <= k) {
      pos = next;
      k -= tree_[next];
    }
  }
  return static_cast<VertexId>(pos);
}

namespace {

void local_average_into(const Configuration& config, const CompatibilityView& view, VertexId x,
                        std::span<double> out) {
  const auto nbrs = view.neighbors(x);
  if (nbrs.empty()) {
    throw UsageError("vertex " + std::to_string(x) + " has no compatible neighbor to average");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (const VertexId y : nbrs) {
    const auto op = config.opinion(y);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += op[i];
  }
  const auto count = static_cast<double>(nbrs.size());
  for (double& v : out) v /= count;
}

}  // namespace

OpinionVector local_average(const Configuration& config, const CompatibilityView& view,
                            VertexId x) {
  std::vector<double> out(config.dim());
  local_average_into(config, view, x, out);
  return OpinionVector(std::move(out));
}

void apply_update_in_place(Configuration& config, const CompatibilityView& view, VertexId x,
                           double alpha) {
  // Dimension is at most kMaxDimension, keep the mean on the stack.
  std::array<double, kMaxDimension> buffer{};
  if (config.dim() > buffer.size()) throw UsageError("dimension exceeds supported maximum");
  const std::span<double> mean(buffer.data(), config.dim());
  local_average_into(config, view, x, mean);
  auto own = config.opinion(x);
  for (std::size_t i = 0; i < own.size(); ++i) own[i] = alpha * own[i] + (1.0 - alpha) * mean[i];
}

Configuration apply_update(Configuration config, const CompatibilityView& view, VertexId x,
                           double alpha) {
  apply_update_in_place(config, view, x, alpha);
  return config;
}

StepResult gillespie_step(const CompatibilityView& view, RandomStream& rng) {
  const std::uint64_t total = view.total_rate();
  if (total == 0) return Absorbed{};
  const double dt = rng.exponential(static_cast<double>(total));
  const VertexId vertex = view.vertex_at(rng.below(total));
  return Transition{dt, vertex};
}

StoppingSpec StoppingSpec::from_eps_prime(double eps_prime, std::size_t vertex_count,
                                          std::uint64_t max_events) {
  if (vertex_count == 0) throw UsageError("stopping spec needs a nonempty graph");
  return StoppingSpec{eps_prime, eps_prime / static_cast<double>(vertex_count), max_events};
}

void StoppingSpec::validate(double tau) const {
  if (!(eps_prime > 0.0 && eps_prime < tau / 2.0)) {
    throw UsageError("eps_prime must lie in (0, tau/2)");
  }
  if (!(eps > 0.0 && eps < tau)) throw UsageError("eps must lie in (0, tau)");
  if (max_events == 0) throw UsageError("max_events must be positive");
}

double default_eps_prime(double tau, double rho) {
  if (tau > rho) return std::min(0.01 * (tau - rho), tau / 4.0);
  return tau / 4.0;
}

bool stop_reached(const Configuration& config, const SocialGraph& g, const StoppingSpec& spec,
                  double tau, Norm norm) {
  for (const Edge& e : g.edges()) {
    if (in_stopping_band(distance(config.opinion(e.u), config.opinion(e.v), norm), spec.eps, tau)) {
      return false;
    }
  }
  return true;
}

}  // namespace hkc
