#include "hkc/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <sstream>

#include "hkc/error.hpp"

namespace hkc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_connected(const std::vector<std::vector<VertexId>>& adjacency) {
  if (adjacency.empty()) return false;
  std::vector<bool> seen(adjacency.size(), false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId x = stack.back();
    stack.pop_back();
    for (const VertexId y : adjacency[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == adjacency.size();
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

VertexId parse_vertex(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("expected a nonnegative integer vertex id, got '" + std::string(token) + "'",
                     line);
  }
  if (value >= std::numeric_limits<VertexId>::max()) {
    throw ParseError("vertex id out of range: " + std::string(token), line);
  }
  return static_cast<VertexId>(value);
}

}  // namespace

SocialGraph::SocialGraph(std::size_t vertex_count, std::span<const Edge> edges)
    : adjacency_(vertex_count) {
  if (vertex_count == 0) throw UsageError("graph must have at least one vertex");
  for (const Edge& e : edges) {
    if (e.u >= vertex_count || e.v >= vertex_count) {
      throw UsageError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                       ") references a vertex outside 0.." + std::to_string(vertex_count - 1));
    }
    if (e.u == e.v) throw UsageError("self-loop at vertex " + std::to_string(e.u));
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  for (VertexId x = 0; x < vertex_count; ++x) {
    for (const VertexId y : adjacency_[x]) {
      if (x < y) edges_.push_back({x, y});
    }
  }
  if (!is_connected(adjacency_)) throw ValidationError("graph is not connected");
}

SocialGraph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line = 0;
  VertexId max_id = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < text.size()) {
      const auto start = text.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos) break;
      const auto stop = std::min(text.find_first_of(" \t", start), text.size());
      tokens.push_back(text.substr(start, stop - start));
      pos = stop;
    }
    if (tokens.size() != 2) throw ParseError("expected two vertex ids 'u v'", line);
    const VertexId u = parse_vertex(tokens[0], line);
    const VertexId v = parse_vertex(tokens[1], line);
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(u), line);
    edges.push_back({u, v});
    max_id = std::max({max_id, u, v});
    any = true;
  }
  if (!any) throw ParseError("edge list contains no edges");
  const std::size_t n = std::size_t{max_id} + 1;
  std::vector<bool> present(n, false);
  for (const Edge& e : edges) present[e.u] = present[e.v] = true;
  for (std::size_t x = 0; x < n; ++x) {
    if (!present[x]) {
      throw ValidationError("vertex ids must be dense: id " + std::to_string(x) +
                            " never appears");
    }
  }
  return SocialGraph(n, edges);
}

SocialGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

std::string to_edge_list(const SocialGraph& g) {
  std::string out;
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

SocialGraph generate(const GraphKind& kind, RandomStream& rng) {
  return std::visit(
      overloaded{
          [](const PathGraph& k) {
            if (k.n < 1) throw UsageError("path: n must be >= 1");
            std::vector<Edge> edges;
            for (VertexId i = 0; i + 1 < k.n; ++i) edges.push_back({i, i + 1});
            return SocialGraph(k.n, edges);
          },
          [](const CycleGraph& k) {
            if (k.n < 3) throw UsageError("cycle: n must be >= 3");
            std::vector<Edge> edges;
            for (VertexId i = 0; i < k.n; ++i) {
              edges.push_back({i, static_cast<VertexId>((i + 1) % k.n)});
            }
            return SocialGraph(k.n, edges);
          },
          [](const CompleteGraph& k) {
            if (k.n < 1) throw UsageError("complete: n must be >= 1");
            std::vector<Edge> edges;
            for (VertexId i = 0; i < k.n; ++i) {
              for (VertexId j = i + 1; j < k.n; ++j) edges.push_back({i, j});
            }
            return SocialGraph(k.n, edges);
          },
          [](const GridGraph& k) {
            if (k.width < 1 || k.height < 1) throw UsageError("grid: w and h must be >= 1");
            std::vector<Edge> edges;
            const auto id = [&](std::size_t col, std::size_t row) {
              return static_cast<VertexId>(row * k.width + col);
            };
            for (std::size_t row = 0; row < k.height; ++row) {
              for (std::size_t col = 0; col < k.width; ++col) {
                if (col + 1 < k.width) edges.push_back({id(col, row), id(col + 1, row)});
                if (row + 1 < k.height) edges.push_back({id(col, row), id(col, row + 1)});
              }
            }
            return SocialGraph(k.width * k.height, edges);
          },
          [&rng](const ErdosRenyiGraph& k) {
            if (k.n < 1) throw UsageError("erdos_renyi: n must be >= 1");
            if (!(k.p > 0.0 && k.p <= 1.0)) throw UsageError("erdos_renyi: p must be in (0, 1]");
            std::vector<Edge> edges;
            for (int attempt = 0; attempt < kErdosRenyiAttempts; ++attempt) {
              edges.clear();
              for (VertexId i = 0; i < k.n; ++i) {
                for (VertexId j = i + 1; j < k.n; ++j) {
                  if (rng.uniform() < k.p) edges.push_back({i, j});
                }
              }
              try {
                return SocialGraph(k.n, edges);
              } catch (const ValidationError&) {
              }
            }
            throw ValidationError("erdos_renyi: no connected sample after " +
                                  std::to_string(kErdosRenyiAttempts) +
                                  " attempts; use a larger p");
          }},
      kind);
}

SocialGraph generate(const GraphKind& kind) {
  if (std::holds_alternative<ErdosRenyiGraph>(kind)) {
    throw UsageError("erdos_renyi generation needs a random stream");
  }
  RandomStream unused(0);
  return generate(kind, unused);
}

std::size_t graph_distance(const SocialGraph& g, VertexId x, VertexId y) {
  const std::size_t n = g.vertex_count();
  if (x >= n || y >= n) throw UsageError("graph_distance: vertex id out of range");
  if (x == y) return 0;
  std::vector<std::size_t> dist(n, static_cast<std::size_t>(-1));
  std::deque<VertexId> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    const VertexId u = queue.front();
    queue.pop_front();
    for (const VertexId v : g.neighbors(u)) {
      if (dist[v] != static_cast<std::size_t>(-1)) continue;
      dist[v] = dist[u] + 1;
      if (v == y) return dist[v];
      queue.push_back(v);
    }
  }
  throw InternalError("graph_distance: graph is not connected");
}

}  // namespace hkc
