#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hkc/random.hpp"

namespace hkc {

/// Largest supported opinion-space dimension.
inline constexpr std::size_t kMaxDimension = 8;

enum class Norm { L1, L2, LInf };

std::string_view to_string(Norm norm);
/// Accepts "l1", "l2", "linf".
Norm parse_norm(std::string_view name);

/// A point of R^n with finite coordinates.
class OpinionVector {
 public:
  OpinionVector() = default;
  explicit OpinionVector(std::vector<double> coords);
  OpinionVector(std::initializer_list<double> coords)
      : OpinionVector(std::vector<double>(coords)) {}
  explicit OpinionVector(std::span<const double> coords)
      : OpinionVector(std::vector<double>(coords.begin(), coords.end())) {}

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  operator std::span<const double>() const noexcept { return coords_; }

  friend bool operator==(const OpinionVector&, const OpinionVector&) = default;

 private:
  std::vector<double> coords_;
};

double norm_of(std::span<const double> v, Norm norm);

/// ||u - v|| under `norm`. Throws UsageError on dimension mismatch.
double distance(std::span<const double> u, std::span<const double> v, Norm norm);

struct Ball {
  OpinionVector center;
  double radius = 0.0;
};

struct Box {
  OpinionVector lo;
  OpinionVector hi;
};

using ConvexShape = std::variant<Ball, Box>;

std::size_t dimension(const ConvexShape& shape);

/// Throws UsageError when the shape is malformed.
void validate(const ConvexShape& shape);

/// Chebyshev center and radius of `shape` under `norm`.
///
/// Balls are their own Chebyshev balls. For a box the midpoint is optimal under
/// all three norms and the radius is the norm of the half-width vector.
std::pair<OpinionVector, double> center_and_radius(const ConvexShape& shape, Norm norm);

/// Immutable opinion set with its center and radius precomputed.
class OpinionSpace {
 public:
  OpinionSpace(Norm norm, ConvexShape shape);

  std::size_t dim() const noexcept { return dim_; }
  Norm norm() const noexcept { return norm_; }
  const ConvexShape& shape() const noexcept { return shape_; }
  const OpinionVector& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }

  /// Membership with an absolute slack `tol` on the defining inequalities.
  bool contains(std::span<const double> point, double tol = 0.0) const;

 private:
  std::size_t dim_;
  Norm norm_;
  ConvexShape shape_;
  OpinionVector center_;
  double radius_;
};

struct UniformShape {};

struct PointMass {
  OpinionVector point;
  double probability = 0.0;
};

struct PointMasses {
  std::vector<PointMass> atoms;
};

using InitialDistribution = std::variant<UniformShape, PointMasses>;

/// Throws UsageError if `dist` is not a probability law on `space`.
void validate(const InitialDistribution& dist, const OpinionSpace& space);

/// Writes one draw of the initial law into `out` (length space.dim()).
void sample_initial_into(const InitialDistribution& dist, const OpinionSpace& space,
                         RandomStream& rng, std::span<double> out);

OpinionVector sample_initial(const InitialDistribution& dist, const OpinionSpace& space,
                             RandomStream& rng);

/// E||X - center|| for X drawn from `dist`.
///
/// Exact whenever a closed form is available: uniform balls give n*r/(n+1),
/// point masses a finite sum, and uniform boxes are exact in one dimension,
/// under L1 and under LInf. Uniform boxes under L2 with n >= 2 fall back to a
/// Monte Carlo mean over `samples` draws.
double expected_center_distance(const InitialDistribution& dist, const OpinionSpace& space,
                                std::size_t samples, RandomStream& rng);

}  // namespace hkc
