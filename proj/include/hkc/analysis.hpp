#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hkc/dynamics.hpp"

namespace hkc {

/// X(c) = sum over vertices of ||xi(x) - c||.
double total_disagreement(const Configuration& config, std::span<const double> c, Norm norm);

/// Instantaneous expected rate of change of X(c):
///   sum_x |N(x)| * (||mean_{N(x)} xi - c|| - ||xi(x) - c||).
/// Never positive, whatever the graph, configuration, norm or c.
double generator_drift(const Configuration& config, const SocialGraph& g, double tau, Norm norm,
                       std::span<const double> c);

struct LimitGraph {
  std::vector<Edge> edges;               // graph edges with distance <= tau
  std::vector<std::size_t> component;    // label per vertex
  std::size_t component_count = 0;
};

LimitGraph limit_graph(const Configuration& config, const SocialGraph& g, double tau, Norm norm);

/// Consensus proxy at a stopping configuration: true iff the edges with
/// distance < eps span a connected subgraph. Throws UsageError unless
/// stop_reached holds.
bool classify_consensus(const Configuration& config, const SocialGraph& g,
                        const StoppingSpec& spec, double tau, Norm norm);

/// Some opinion lies strictly within tau - rho - eps_prime of the center.
/// Throws UsageError when tau <= rho + eps_prime.
bool check_event_A(const Configuration& config, const OpinionSpace& space, double tau,
                   double eps_prime);

inline bool event_A_applicable(double tau, double rho, double eps_prime) {
  return tau > rho + eps_prime;
}

struct BoundInputs {
  double expected_dist = 0.0;  // E||X - center||
  double tau = 0.0;
  double rho = 0.0;
};

inline bool bound_applicable(double tau, double rho) { return tau > rho; }

/// max(0, 1 - E||X - center|| / (tau - rho)). Throws UsageError when tau <= rho.
double theoretical_bound(const BoundInputs& inputs);

/// Largest opinion distance over all vertex pairs (not only edges).
double max_pair_distance(const Configuration& config, Norm norm);

/// Violations of the structure every stopping configuration must have.
struct StoppingStructure {
  std::size_t band_edges = 0;         // edges with distance in [eps, tau]
  std::size_t chain_violations = 0;   // agreement components with diameter >= eps (|V| - 1)
  bool ok() const noexcept { return band_edges == 0 && chain_violations == 0; }
};

StoppingStructure check_stopping_structure(const Configuration& config, const SocialGraph& g,
                                           double eps, double tau, Norm norm);

}  // namespace hkc
