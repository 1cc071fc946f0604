#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hkc/random.hpp"

namespace hkc {

using VertexId = std::uint32_t;

struct Edge {
  VertexId u;
  VertexId v;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite, simple, undirected, connected graph on vertices 0..n-1.
class SocialGraph {
 public:
  /// Throws UsageError for self-loops or out-of-range ids and
  /// ValidationError when the result is disconnected. Duplicates are merged.
  SocialGraph(std::size_t vertex_count, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return adjacency_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Sorted neighbor ids of `x`.
  std::span<const VertexId> neighbors(VertexId x) const { return adjacency_.at(x); }
  std::size_t degree(VertexId x) const { return adjacency_.at(x).size(); }

  /// Each edge once, with u < v, in lexicographic order.
  std::span<const Edge> edges() const noexcept { return edges_; }

  friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

 private:
  std::vector<std::vector<VertexId>> adjacency_;
  std::vector<Edge> edges_;
};

/// Parses "u v" lines; '#' starts a comment line; LF or CRLF.
SocialGraph parse_edge_list(std::istream& in);
SocialGraph parse_edge_list(std::string_view text);

/// Canonical edge-list text: one "u v" line per edge with u < v, sorted.
std::string to_edge_list(const SocialGraph& g);

struct PathGraph { std::size_t n; };
struct CycleGraph { std::size_t n; };
struct CompleteGraph { std::size_t n; };
struct GridGraph { std::size_t width; std::size_t height; };
struct ErdosRenyiGraph { std::size_t n; double p; };

using GraphKind = std::variant<PathGraph, CycleGraph, CompleteGraph, GridGraph, ErdosRenyiGraph>;

/// Maximum number of Erdos-Renyi draws before giving up on connectivity.
inline constexpr int kErdosRenyiAttempts = 10'000;

/// `rng` is used only by the Erdos-Renyi kind, which is resampled until connected.
SocialGraph generate(const GraphKind& kind, RandomStream& rng);
SocialGraph generate(const GraphKind& kind);

/// Breadth-first shortest-path length.
std::size_t graph_distance(const SocialGraph& g, VertexId x, VertexId y);

/// Connected components of the spanning subgraph of `g` keeping edges for
/// which `keep(u, v)` holds. Returns a component label per vertex, labels
/// numbered in order of smallest member.
template <typename Keep>
std::vector<std::size_t> component_labels(const SocialGraph& g, Keep&& keep);

template <typename Keep>
std::vector<std::size_t> component_labels(const SocialGraph& g, Keep&& keep) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.vertex_count(), unset);
  std::vector<VertexId> stack;
  std::size_t next = 0;
  for (VertexId root = 0; root < g.vertex_count(); ++root) {
    if (label[root] != unset) continue;
    label[root] = next;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (const VertexId y : g.neighbors(x)) {
        if (label[y] == unset && keep(x, y)) {
          label[y] = next;
          stack.push_back(y);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace hkc
