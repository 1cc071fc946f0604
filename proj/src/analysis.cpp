#include "hkc/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "hkc/error.hpp"

namespace hkc {

double total_disagreement(const Configuration& config, std::span<const double> c, Norm norm) {
  if (c.size() != config.dim()) throw UsageError("total_disagreement: dimension mismatch");
  double total = 0.0;
  for (VertexId x = 0; x < config.vertex_count(); ++x) total += distance(config.opinion(x), c, norm);
  return total;
}

double generator_drift(const Configuration& config, const SocialGraph& g, double tau, Norm norm,
                       std::span<const double> c) {
  if (c.size() != config.dim()) throw UsageError("generator_drift: dimension mismatch");
  const CompatibilityView view(config, g, tau, norm);
  std::array<double, kMaxDimension> buffer{};
  const std::span<double> mean(buffer.data(), config.dim());
  double drift = 0.0;
  for (VertexId x = 0; x < config.vertex_count(); ++x) {
    const auto nbrs = view.neighbors(x);
    if (nbrs.empty()) continue;
    std::fill(mean.begin(), mean.end(), 0.0);
    for (const VertexId y : nbrs) {
      const auto op = config.opinion(y);
      for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += op[i];
    }
    const auto k = static_cast<double>(nbrs.size());
    for (double& v : mean) v /= k;
    drift += k * (distance(mean, c, norm) - distance(config.opinion(x), c, norm));
  }
  return drift;
}

LimitGraph limit_graph(const Configuration& config, const SocialGraph& g, double tau, Norm norm) {
  const auto compatible = [&](VertexId u, VertexId v) {
    return distance(config.opinion(u), config.opinion(v), norm) <= tau;
  };
  LimitGraph out;
  for (const Edge& e : g.edges()) {
    if (compatible(e.u, e.v)) out.edges.push_back(e);
  }
  out.component = component_labels(g, compatible);
  out.component_count =
      out.component.empty() ? 0 : *std::max_element(out.component.begin(), out.component.end()) + 1;
  return out;
}

bool classify_consensus(const Configuration& config, const SocialGraph& g,
                        const StoppingSpec& spec, double tau, Norm norm) {
  if (!stop_reached(config, g, spec, tau, norm)) {
    throw UsageError("classify_consensus: configuration has an edge inside [eps, tau]");
  }
  const auto labels = component_labels(g, [&](VertexId u, VertexId v) {
    return distance(config.opinion(u), config.opinion(v), norm) < spec.eps;
  });
  return std::all_of(labels.begin(), labels.end(), [](std::size_t l) { return l == 0; });
}

bool check_event_A(const Configuration& config, const OpinionSpace& space, double tau,
                   double eps_prime) {
  if (!event_A_applicable(tau, space.radius(), eps_prime)) {
    throw UsageError("check_event_A: requires tau > rho + eps_prime");
  }
  const double threshold = tau - space.radius() - eps_prime;
  for (VertexId x = 0; x < config.vertex_count(); ++x) {
    if (distance(config.opinion(x), space.center(), space.norm()) < threshold) return true;
  }
  return false;
}

double theoretical_bound(const BoundInputs& inputs) {
  if (!bound_applicable(inputs.tau, inputs.rho)) {
    throw UsageError("theoretical_bound: requires tau > rho");
  }
  if (!(inputs.expected_dist >= 0.0)) throw UsageError("theoretical_bound: negative expectation");
  return std::clamp(1.0 - inputs.expected_dist / (inputs.tau - inputs.rho), 0.0, 1.0);
}

double max_pair_distance(const Configuration& config, Norm norm) {
  double best = 0.0;
  for (VertexId x = 0; x < config.vertex_count(); ++x) {
    for (VertexId y = x + 1; y < config.vertex_count(); ++y) {
      best = std::max(best, distance(config.opinion(x), config.opinion(y), norm));
    }
  }
  return best;
}

StoppingStructure check_stopping_structure(const Configuration& config, const SocialGraph& g,
                                           double eps, double tau, Norm norm) {
  StoppingStructure out;
  for (const Edge& e : g.edges()) {
    if (in_stopping_band(distance(config.opinion(e.u), config.opinion(e.v), norm), eps, tau)) {
      ++out.band_edges;
    }
  }
  const auto labels = component_labels(g, [&](VertexId u, VertexId v) {
    return distance(config.opinion(u), config.opinion(v), norm) < eps;
  });
  const std::size_t n = g.vertex_count();
  const std::size_t count = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::vector<VertexId>> members(count);
  for (VertexId x = 0; x < n; ++x) members[labels[x]].push_back(x);
  const double limit = eps * static_cast<double>(n - 1);
  for (const auto& group : members) {
    if (group.size() < 2) continue;
    double diameter = 0.0;
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        diameter = std::max(diameter,
                            distance(config.opinion(group[i]), config.opinion(group[j]), norm));
      }
    }
    if (!(diameter < limit)) ++out.chain_violations;
  }
  return out;
}

}  // namespace hkc
