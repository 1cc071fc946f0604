#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "hkc/dynamics.hpp"

namespace hkc {

/// One randomly generated drift test case.
struct DriftCase {
  SocialGraph graph;
  Configuration config;
  double tau;
  Norm norm;
  std::vector<OpinionVector> centers;  // box corners and random points
};

/// Graph of at most 20 vertices, dimension 1..3, any norm, opinions in the
/// unit cube (uniform, clustered, or on a coarse lattice to provoke ties), and
/// centers at the 2^n unit-cube corners plus 10 random points.
DriftCase random_drift_case(RandomStream& rng);

/// Greedily deletes vertices, edges and centers while `fails` keeps holding.
/// Connectivity is preserved.
DriftCase minimize_case(DriftCase failing, const std::function<bool(const DriftCase&)>& fails);

struct DriftViolation {
  std::size_t case_index;
  DriftCase minimized;
  double drift;
};

struct DriftCheckResult {
  std::size_t cases = 0;
  std::size_t evaluations = 0;
  double max_drift = -std::numeric_limits<double>::infinity();
  std::optional<DriftViolation> violation;
};

inline constexpr double kDriftTolerance = 1e-9;

/// Checks generator_drift <= tolerance on `cases` random cases; case i is drawn
/// from RandomStream(seed, i). Stops at the first violation.
DriftCheckResult check_drift_invariants(std::size_t cases, std::uint64_t seed,
                                        double tolerance = kDriftTolerance);

}  // namespace hkc
