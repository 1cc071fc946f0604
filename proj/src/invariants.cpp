#include "hkc/invariants.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "hkc/analysis.hpp"
#include "hkc/error.hpp"

namespace hkc {

namespace {

constexpr std::size_t kMaxCaseVertices = 20;
constexpr std::size_t kRandomCenters = 10;

SocialGraph random_graph(RandomStream& rng) {
  const std::size_t n = 1 + rng.below(kMaxCaseVertices);
  switch (rng.below(5)) {
    case 0: return generate(PathGraph{n}, rng);
    case 1: return generate(n >= 3 ? GraphKind{CycleGraph{n}} : GraphKind{PathGraph{n}}, rng);
    case 2: return generate(CompleteGraph{n}, rng);
    case 3: {
      const std::size_t w = 1 + rng.below(5);
      return generate(GridGraph{w, 1 + rng.below(kMaxCaseVertices / w)}, rng);
    }
    default: return generate(ErdosRenyiGraph{n, rng.uniform(0.3, 0.9)}, rng);
  }
}

Configuration random_config(std::size_t vertices, std::size_t dim, RandomStream& rng) {
  Configuration config(vertices, dim);
  const auto style = rng.below(3);
  std::vector<std::vector<double>> clusters(1 + rng.below(4), std::vector<double>(dim));
  for (auto& c : clusters) {
    for (double& v : c) v = rng.uniform();
  }
  for (VertexId x = 0; x < vertices; ++x) {
    auto op = config.opinion(x);
    for (std::size_t i = 0; i < dim; ++i) {
      switch (style) {
        case 0: op[i] = rng.uniform(); break;
        case 1: {
          const auto& c = clusters[rng.below(clusters.size())];
          op[i] = std::clamp(c[i] + rng.uniform(-0.02, 0.02), 0.0, 1.0);
          break;
        }
        default: op[i] = 0.25 * static_cast<double>(rng.below(5)); break;
      }
    }
  }
  return config;
}

bool violates(const DriftCase& c, double tolerance) {
  return std::any_of(c.centers.begin(), c.centers.end(), [&](const OpinionVector& center) {
    return generator_drift(c.config, c.graph, c.tau, c.norm, center) > tolerance;
  });
}

// Copy of `c` without vertex `drop`, or nullopt if that disconnects the graph.
std::optional<DriftCase> without_vertex(const DriftCase& c, VertexId drop) {
  const std::size_t n = c.graph.vertex_count();
  if (n <= 1) return std::nullopt;
  const auto remap = [drop](VertexId v) { return v < drop ? v : v - 1; };
  std::vector<Edge> edges;
  for (const Edge& e : c.graph.edges()) {
    if (e.u != drop && e.v != drop) edges.push_back({remap(e.u), remap(e.v)});
  }
  std::vector<OpinionVector> opinions;
  for (VertexId x = 0; x < n; ++x) {
    if (x != drop) opinions.emplace_back(c.config.opinion(x));
  }
  try {
    return DriftCase{SocialGraph(n - 1, edges), Configuration(opinions), c.tau, c.norm, c.centers};
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

std::optional<DriftCase> without_edge(const DriftCase& c, std::size_t index) {
  std::vector<Edge> edges(c.graph.edges().begin(), c.graph.edges().end());
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(index));
  try {
    return DriftCase{SocialGraph(c.graph.vertex_count(), edges), c.config, c.tau, c.norm, c.centers};
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

}  // namespace

DriftCase random_drift_case(RandomStream& rng) {
  SocialGraph graph = random_graph(rng);
  const std::size_t dim = 1 + rng.below(3);
  const Norm norm = std::array{Norm::L1, Norm::L2, Norm::LInf}[rng.below(3)];
  Configuration config = random_config(graph.vertex_count(), dim, rng);

  // Either a random threshold or one sitting exactly on an edge distance.
  double tau = rng.uniform(0.01, 1.5);
  if (graph.edge_count() > 0 && rng.below(4) == 0) {
    const Edge e = graph.edges()[rng.below(graph.edge_count())];
    const double d = distance(config.opinion(e.u), config.opinion(e.v), norm);
    if (d > 0.0) tau = d;
  }

  std::vector<OpinionVector> centers;
  for (std::size_t mask = 0; mask < (std::size_t{1} << dim); ++mask) {
    std::vector<double> corner(dim);
    for (std::size_t i = 0; i < dim; ++i) corner[i] = (mask >> i) & 1U ? 1.0 : 0.0;
    centers.emplace_back(std::move(corner));
  }
  for (std::size_t k = 0; k < kRandomCenters; ++k) {
    std::vector<double> point(dim);
    for (double& v : point) v = rng.uniform(-0.5, 1.5);
    centers.emplace_back(std::move(point));
  }
  return DriftCase{std::move(graph), std::move(config), tau, norm, std::move(centers)};
}

DriftCase minimize_case(DriftCase failing, const std::function<bool(const DriftCase&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (VertexId v = 0; v < failing.graph.vertex_count(); ++v) {
      auto smaller = without_vertex(failing, v);
      if (smaller && fails(*smaller)) {
        failing = std::move(*smaller);
        progress = true;
        break;
      }
    }
    if (progress) continue;
    for (std::size_t e = 0; e < failing.graph.edge_count(); ++e) {
      auto smaller = without_edge(failing, e);
      if (smaller && fails(*smaller)) {
        failing = std::move(*smaller);
        progress = true;
        break;
      }
    }
    if (progress) continue;
    if (failing.centers.size() > 1) {
      for (std::size_t k = 0; k < failing.centers.size(); ++k) {
        DriftCase single = failing;
        single.centers = {failing.centers[k]};
        if (fails(single)) {
          failing = std::move(single);
          progress = true;
          break;
        }
      }
    }
  }
  return failing;
}

DriftCheckResult check_drift_invariants(std::size_t cases, std::uint64_t seed, double tolerance) {
  if (cases == 0) throw UsageError("check-invariants: cases must be >= 1");
  DriftCheckResult result;
  for (std::size_t i = 0; i < cases; ++i) {
    RandomStream rng(seed, i);
    DriftCase c = random_drift_case(rng);
    ++result.cases;
    for (const auto& center : c.centers) {
      const double drift = generator_drift(c.config, c.graph, c.tau, c.norm, center);
      ++result.evaluations;
      result.max_drift = std::max(result.max_drift, drift);
    }
    if (result.max_drift > tolerance) {
      DriftCase small =
          minimize_case(std::move(c), [tolerance](const DriftCase& d) { return violates(d, tolerance); });
      double worst = -std::numeric_limits<double>::infinity();
      for (const auto& center : small.centers) {
        worst = std::max(worst, generator_drift(small.config, small.graph, small.tau, small.norm, center));
      }
      result.violation = DriftViolation{i, std::move(small), worst};
      return result;
    }
  }
  return result;
}

}  // namespace hkc
