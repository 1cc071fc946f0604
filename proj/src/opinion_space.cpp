#include "hkc/opinion_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hkc/error.hpp"

namespace hkc {

namespace {

constexpr int kMaxRejections = 1'000'000;
constexpr double kProbabilityTolerance = 1e-12;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_dims(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw UsageError("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                     std::to_string(v.size()));
  }
}

// E max_i |Y_i| for independent Y_i ~ U[0, h_i]:
// integral over s of 1 - prod_i min(s / h_i, 1), piecewise polynomial.
double expected_linf_of_uniform_box(std::vector<double> half) {
  std::sort(half.begin(), half.end());
  const std::size_t n = half.size();
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // On [prev, half[k]] the factors with index >= k are s / half[i].
    const auto m = static_cast<double>(n - k);
    double denom = 1.0;
    for (std::size_t i = k; i < n; ++i) denom *= half[i];
    const double hi = half[k];
    const double integral_of_product =
        (std::pow(hi, m + 1.0) - std::pow(prev, m + 1.0)) / ((m + 1.0) * denom);
    total += (hi - prev) - integral_of_product;
    prev = hi;
  }
  return total;
}

}  // namespace

std::string_view to_string(Norm norm) {
  switch (norm) {
    case Norm::L1: return "l1";
    case Norm::L2: return "l2";
    case Norm::LInf: return "linf";
  }
  return "?";
}

Norm parse_norm(std::string_view name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  if (name == "linf") return Norm::LInf;
  throw UsageError("unknown norm '" + std::string(name) + "' (expected l1, l2 or linf)");
}

OpinionVector::OpinionVector(std::vector<double> coords) : coords_(std::move(coords)) {
  for (const double c : coords_) {
    if (!std::isfinite(c)) throw UsageError("opinion coordinates must be finite");
  }
}

double norm_of(std::span<const double> v, Norm norm) {
  switch (norm) {
    case Norm::L1: {
      double s = 0.0;
      for (const double x : v) s += std::abs(x);
      return s;
    }
    case Norm::L2: {
      double s = 0.0;
      for (const double x : v) s += x * x;
      return std::sqrt(s);
    }
    case Norm::LInf: {
      double m = 0.0;
      for (const double x : v) m = std::max(m, std::abs(x));
      return m;
    }
  }
  throw InternalError("unhandled norm");
}

double distance(std::span<const double> u, std::span<const double> v, Norm norm) {
  check_dims(u, v);
  const std::size_t n = u.size();
  switch (norm) {
    case Norm::L1: {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::abs(u[i] - v[i]);
      return s;
    }
    case Norm::L2: {
      if (n == 1) return std::abs(u[0] - v[0]);
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = u[i] - v[i];
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Norm::LInf: {
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(u[i] - v[i]));
      return m;
    }
  }
  throw InternalError("unhandled norm");
}

std::size_t dimension(const ConvexShape& shape) {
  return std::visit(overloaded{[](const Ball& b) { return b.center.size(); },
                               [](const Box& b) { return b.lo.size(); }},
                    shape);
}

void validate(const ConvexShape& shape) {
  std::visit(overloaded{
                 [](const Ball& b) {
                   if (b.center.size() == 0) throw UsageError("ball: empty center");
                   if (!(b.radius > 0.0) || !std::isfinite(b.radius)) {
                     throw UsageError("ball: radius must be positive and finite");
                   }
                 },
                 [](const Box& b) {
                   if (b.lo.size() == 0) throw UsageError("box: empty bounds");
                   if (b.lo.size() != b.hi.size()) throw UsageError("box: lo/hi dimension mismatch");
                   for (std::size_t i = 0; i < b.lo.size(); ++i) {
                     if (!(b.lo[i] < b.hi[i])) {
                       throw UsageError("box: lo[" + std::to_string(i) + "] must be < hi[" +
                                        std::to_string(i) + "]");
                     }
                   }
                 }},
             shape);
  if (dimension(shape) > kMaxDimension) {
    throw UsageError("dimension " + std::to_string(dimension(shape)) + " exceeds supported maximum " +
                     std::to_string(kMaxDimension));
  }
}

std::pair<OpinionVector, double> center_and_radius(const ConvexShape& shape, Norm norm) {
  validate(shape);
  return std::visit(
      overloaded{[](const Ball& b) { return std::pair{b.center, b.radius}; },
                 [norm](const Box& b) {
                   const std::size_t n = b.lo.size();
                   std::vector<double> mid(n);
                   std::vector<double> half(n);
                   for (std::size_t i = 0; i < n; ++i) {
                     mid[i] = 0.5 * (b.lo[i] + b.hi[i]);
                     half[i] = 0.5 * (b.hi[i] - b.lo[i]);
                   }
                   return std::pair{OpinionVector(std::move(mid)), norm_of(half, norm)};
                 }},
      shape);
}

OpinionSpace::OpinionSpace(Norm norm, ConvexShape shape)
    : dim_(dimension(shape)), norm_(norm), shape_(std::move(shape)) {
  std::tie(center_, radius_) = center_and_radius(shape_, norm_);
  if (!contains(center_)) throw InternalError("center outside the opinion space");
}

bool OpinionSpace::contains(std::span<const double> point, double tol) const {
  if (point.size() != dim_) return false;
  return std::visit(overloaded{[&](const Ball& b) {
                                 return distance(point, b.center, norm_) <= b.radius + tol;
                               },
                               [&](const Box& b) {
                                 for (std::size_t i = 0; i < dim_; ++i) {
                                   if (point[i] < b.lo[i] - tol || point[i] > b.hi[i] + tol) {
                                     return false;
                                   }
                                 }
                                 return true;
                               }},
                    shape_);
}

void validate(const InitialDistribution& dist, const OpinionSpace& space) {
  const auto* masses = std::get_if<PointMasses>(&dist);
  if (masses == nullptr) return;
  if (masses->atoms.empty()) throw UsageError("point_masses: no atoms");
  double total = 0.0;
  for (const auto& atom : masses->atoms) {
    if (!(atom.probability > 0.0)) throw UsageError("point_masses: probabilities must be positive");
    if (atom.point.size() != space.dim()) throw UsageError("point_masses: atom dimension mismatch");
    if (!space.contains(atom.point)) throw UsageError("point_masses: atom outside the opinion space");
    total += atom.probability;
  }
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw UsageError("point_masses: probabilities must sum to 1");
  }
}

void sample_initial_into(const InitialDistribution& dist, const OpinionSpace& space,
                         RandomStream& rng, std::span<double> out) {
  if (out.size() != space.dim()) throw UsageError("sample_initial: output dimension mismatch");
  if (const auto* masses = std::get_if<PointMasses>(&dist)) {
    const double u = rng.uniform();
    double cumulative = 0.0;
    const PointMass* chosen = &masses->atoms.back();
    for (const auto& atom : masses->atoms) {
      cumulative += atom.probability;
      if (u < cumulative) {
        chosen = &atom;
        break;
      }
    }
    std::copy(chosen->point.coords().begin(), chosen->point.coords().end(), out.begin());
    return;
  }
  std::visit(overloaded{[&](const Box& b) {
                          for (std::size_t i = 0; i < out.size(); ++i) {
                            out[i] = rng.uniform(b.lo[i], b.hi[i]);
                          }
                        },
                        [&](const Ball& b) {
                          // Rejection from the bounding cube, valid for every norm.
                          for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
                            for (std::size_t i = 0; i < out.size(); ++i) {
                              out[i] = rng.uniform(b.center[i] - b.radius, b.center[i] + b.radius);
                            }
                            if (distance(out, b.center, space.norm()) <= b.radius) return;
                          }
                          throw InternalError("ball rejection sampling exceeded iteration cap");
                        }},
             space.shape());
}

OpinionVector sample_initial(const InitialDistribution& dist, const OpinionSpace& space,
                             RandomStream& rng) {
  std::vector<double> out(space.dim());
  sample_initial_into(dist, space, rng, out);
  return OpinionVector(std::move(out));
}

double expected_center_distance(const InitialDistribution& dist, const OpinionSpace& space,
                                std::size_t samples, RandomStream& rng) {
  const auto n = static_cast<double>(space.dim());
  if (const auto* masses = std::get_if<PointMasses>(&dist)) {
    double total = 0.0;
    for (const auto& atom : masses->atoms) {
      total += atom.probability * distance(atom.point, space.center(), space.norm());
    }
    return total;
  }
  if (const auto* ball = std::get_if<Ball>(&space.shape())) {
    return n * ball->radius / (n + 1.0);
  }
  const auto& box = std::get<Box>(space.shape());
  std::vector<double> half(space.dim());
  for (std::size_t i = 0; i < half.size(); ++i) half[i] = 0.5 * (box.hi[i] - box.lo[i]);
  if (space.dim() == 1 || space.norm() == Norm::L1) {
    return 0.5 * std::accumulate(half.begin(), half.end(), 0.0);
  }
  if (space.norm() == Norm::LInf) return expected_linf_of_uniform_box(std::move(half));

  if (samples == 0) throw UsageError("expected_center_distance: samples must be positive");
  std::vector<double> x(space.dim());
  double sum = 0.0;
  double compensation = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    sample_initial_into(dist, space, rng, x);
    // Kahan summation.
    const double y = distance(x, space.center(), space.norm()) - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
  return sum / static_cast<double>(samples);
}

}  // namespace hkc
