#include "hkc/opinion_space.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "hkc/error.hpp"

namespace hkc {
namespace {

constexpr Norm kNorms[] = {Norm::L1, Norm::L2, Norm::LInf};

TEST(Distance, IdentityIsZero) {
  const OpinionVector u{0.3, 0.7};
  for (const Norm n : kNorms) EXPECT_EQ(distance(u, u, n), 0.0);
}

TEST(Distance, OneDimensionalAbsoluteDifference) {
  EXPECT_EQ(distance(OpinionVector{0.0}, OpinionVector{1.0}, Norm::L1), 1.0);
}

TEST(Distance, ThreeFourFive) {
  const OpinionVector u{0.0, 0.0};
  const OpinionVector v{3.0, 4.0};
  EXPECT_DOUBLE_EQ(distance(u, v, Norm::L2), 5.0);
  EXPECT_DOUBLE_EQ(distance(u, v, Norm::L1), 7.0);
  EXPECT_DOUBLE_EQ(distance(u, v, Norm::LInf), 4.0);
}

TEST(Distance, DimensionMismatchIsUsageError) {
  EXPECT_THROW(distance(OpinionVector{0.0}, OpinionVector{0.0, 1.0}, Norm::L2), UsageError);
}

TEST(OpinionVector, RejectsNonFinite) {
  EXPECT_THROW(OpinionVector({std::nan("")}), UsageError);
  EXPECT_THROW(OpinionVector({1.0, INFINITY}), UsageError);
}

// Norm axioms on random triples.
TEST(Distance, NormAxiomsOnRandomTriples) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_int_distribution<int> dim(1, 8);
  for (const Norm n : kNorms) {
    for (int trial = 0; trial < 10'000; ++trial) {
      const int d = dim(gen);
      std::vector<double> u(d), v(d), w(d), scaled(d), zero(d, 0.0);
      const double a = coord(gen);
      for (int i = 0; i < d; ++i) {
        u[i] = coord(gen);
        v[i] = coord(gen);
        w[i] = coord(gen);
        scaled[i] = a * u[i];
      }
      const double uv = distance(u, v, n);
      EXPECT_GE(uv, 0.0);
      EXPECT_EQ(uv, distance(v, u, n));
      EXPECT_LE(distance(u, w, n), uv + distance(v, w, n) + 1e-12);
      EXPECT_NEAR(distance(scaled, zero, n), std::abs(a) * distance(u, zero, n), 1e-12);
    }
  }
}

TEST(CenterAndRadius, BallIsItsOwnChebyshevBall) {
  for (const Norm n : kNorms) {
    const auto [c, r] = center_and_radius(Ball{OpinionVector{0.5}, 0.5}, n);
    EXPECT_EQ(c, OpinionVector{0.5});
    EXPECT_EQ(r, 0.5);
  }
}

// Supremum of ||x - c|| over a dense grid of the box; corners are grid points.
double grid_supremum(const Box& box, std::span<const double> c, Norm n, int per_axis) {
  const std::size_t d = box.lo.size();
  std::vector<int> idx(d, 0);
  std::vector<double> x(d);
  double best = 0.0;
  for (;;) {
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * idx[i] / (per_axis - 1);
    }
    best = std::max(best, distance(x, c, n));
    std::size_t k = 0;
    while (k < d && ++idx[k] == per_axis) idx[k++] = 0;
    if (k == d) break;
  }
  return best;
}

TEST(CenterAndRadius, UnitIntervalUnderL1) {
  const Box box{OpinionVector{0.0}, OpinionVector{1.0}};
  const auto [c, r] = center_and_radius(box, Norm::L1);
  EXPECT_EQ(c, OpinionVector{0.5});
  EXPECT_DOUBLE_EQ(r, 0.5);
  EXPECT_DOUBLE_EQ(grid_supremum(box, c, Norm::L1, 101), 0.5);
}

TEST(CenterAndRadius, UnitSquareUnderL2) {
  const Box box{OpinionVector{0.0, 0.0}, OpinionVector{1.0, 1.0}};
  const auto [c, r] = center_and_radius(box, Norm::L2);
  EXPECT_EQ(c, (OpinionVector{0.5, 0.5}));
  EXPECT_NEAR(r, 0.70711, 1e-5);
  EXPECT_NEAR(grid_supremum(box, c, Norm::L2, 51), std::sqrt(2.0) / 2.0, 1e-12);
}

TEST(CenterAndRadius, RadiusIsTightOnSampledShapes) {
  const std::vector<ConvexShape> shapes = {
      Box{OpinionVector{0.0, -1.0, 2.0}, OpinionVector{1.0, 0.5, 2.25}},
      Box{OpinionVector{-1.0}, OpinionVector{3.0}},
      Ball{OpinionVector{0.2, 0.3}, 0.7},
      Ball{OpinionVector{0.0, 0.0, 0.0}, 1.0},
  };
  for (const auto& shape : shapes) {
    for (const Norm n : kNorms) {
      const OpinionSpace space(n, shape);
      RandomStream rng(5);
      double best = 0.0;
      for (int s = 0; s < 100'000; ++s) {
        const auto x = sample_initial(UniformShape{}, space, rng);
        best = std::max(best, distance(x, space.center(), n));
      }
      EXPECT_LE(best, space.radius() + 1e-9);
      if (const auto* box = std::get_if<Box>(&shape)) {
        // Uniform samples rarely hit corners; the grid covers them.
        best = std::max(best, grid_supremum(*box, space.center(), n, 11));
      }
      EXPECT_GE(best, space.radius() - 1e-2) << to_string(n);
    }
  }
}

TEST(ConvexShape, Validation) {
  EXPECT_THROW(validate(ConvexShape{Ball{OpinionVector{0.0}, 0.0}}), UsageError);
  EXPECT_THROW(validate(ConvexShape{Box{OpinionVector{1.0}, OpinionVector{1.0}}}), UsageError);
  EXPECT_THROW(validate(ConvexShape{Box{OpinionVector{0.0}, OpinionVector{1.0, 2.0}}}), UsageError);
  EXPECT_THROW(OpinionSpace(Norm::L2, Ball{OpinionVector(std::vector<double>(9, 0.0)), 1.0}),
               UsageError);
}

TEST(SampleInitial, PointMassIsDeterministic) {
  const OpinionSpace space(Norm::L1, Box{OpinionVector{0.0}, OpinionVector{1.0}});
  const InitialDistribution dist = PointMasses{{{OpinionVector{0.25}, 1.0}}};
  RandomStream rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_initial(dist, space, rng), OpinionVector{0.25});
}

TEST(SampleInitial, UniformUnitIntervalMean) {
  const OpinionSpace space(Norm::L1, Box{OpinionVector{0.0}, OpinionVector{1.0}});
  RandomStream rng(2);
  double sum = 0.0;
  constexpr int kSamples = 100'000;
  for (int i = 0; i < kSamples; ++i) sum += sample_initial(UniformShape{}, space, rng)[0];
  EXPECT_NEAR(sum / kSamples, 0.5, 0.01);
}

TEST(SampleInitial, BallSamplesStayInside) {
  for (const Norm n : kNorms) {
    const OpinionSpace space(n, Ball{OpinionVector{0.0, 0.0}, 1.0});
    RandomStream rng(3);
    for (int i = 0; i < 100'000; ++i) {
      ASSERT_TRUE(space.contains(sample_initial(UniformShape{}, space, rng)));
    }
  }
}

TEST(SampleInitial, PointMassFrequencies) {
  const OpinionSpace space(Norm::L2, Box{OpinionVector{0.0}, OpinionVector{1.0}});
  const InitialDistribution dist =
      PointMasses{{{OpinionVector{0.0}, 0.25}, {OpinionVector{1.0}, 0.75}}};
  RandomStream rng(4);
  int ones = 0;
  constexpr int kSamples = 100'000;
  for (int i = 0; i < kSamples; ++i) ones += sample_initial(dist, space, rng)[0] == 1.0;
  EXPECT_NEAR(static_cast<double>(ones) / kSamples, 0.75, 0.01);
}

TEST(InitialDistribution, PointMassValidation) {
  const OpinionSpace space(Norm::L2, Box{OpinionVector{0.0}, OpinionVector{1.0}});
  EXPECT_THROW(validate(InitialDistribution{PointMasses{{{OpinionVector{0.5}, 0.9}}}}, space),
               UsageError);
  EXPECT_THROW(validate(InitialDistribution{PointMasses{{{OpinionVector{1.5}, 1.0}}}}, space),
               UsageError);
  EXPECT_THROW(validate(InitialDistribution{PointMasses{{{OpinionVector{0.5}, 1.0},
                                                         {OpinionVector{0.2}, 0.0}}}},
                        space),
               UsageError);
  EXPECT_NO_THROW(validate(InitialDistribution{PointMasses{
                               {{OpinionVector{0.5}, 0.5}, {OpinionVector{0.2}, 0.5}}}},
                           space));
}

TEST(ExpectedCenterDistance, UniformBallClosedForm) {
  RandomStream rng(0);
  const OpinionSpace interval(Norm::L2, Ball{OpinionVector{0.5}, 0.5});
  EXPECT_DOUBLE_EQ(expected_center_distance(UniformShape{}, interval, 1, rng), 0.25);
  const OpinionSpace disc(Norm::L2, Ball{OpinionVector{0.0, 0.0}, 1.0});
  EXPECT_DOUBLE_EQ(expected_center_distance(UniformShape{}, disc, 1, rng), 2.0 / 3.0);
}

TEST(ExpectedCenterDistance, PointMassAtCenterIsZero) {
  RandomStream rng(0);
  const OpinionSpace space(Norm::L2, Box{OpinionVector{0.0, 0.0}, OpinionVector{1.0, 1.0}});
  const InitialDistribution dist = PointMasses{{{space.center(), 1.0}}};
  EXPECT_EQ(expected_center_distance(dist, space, 1, rng), 0.0);
}

// Independent Monte Carlo oracle: std::mt19937_64 + <random>, its own norms.
double oracle_box_mean(const std::vector<double>& lo, const std::vector<double>& hi, Norm n,
                       int samples) {
  std::mt19937_64 gen(99);
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    double l1 = 0.0, l2 = 0.0, linf = 0.0;
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const double x = std::uniform_real_distribution<double>(lo[i], hi[i])(gen);
      const double d = std::abs(x - 0.5 * (lo[i] + hi[i]));
      l1 += d;
      l2 += d * d;
      linf = std::max(linf, d);
    }
    sum += n == Norm::L1 ? l1 : n == Norm::L2 ? std::sqrt(l2) : linf;
  }
  return sum / samples;
}

TEST(ExpectedCenterDistance, BoxClosedFormsAgreeWithOracle) {
  const std::vector<double> lo{0.0, -1.0, 0.0};
  const std::vector<double> hi{1.0, 2.0, 0.5};
  RandomStream rng(8);
  for (const Norm n : kNorms) {
    const OpinionSpace space(n, Box{OpinionVector(lo), OpinionVector(hi)});
    const double got = expected_center_distance(UniformShape{}, space, 200'000, rng);
    const double want = oracle_box_mean(lo, hi, n, 1'000'000);
    EXPECT_NEAR(got, want, 0.01 * want) << to_string(n);
  }
}

TEST(ExpectedCenterDistance, LInfCubeMatchesBallFormula) {
  RandomStream rng(0);
  const OpinionSpace cube(Norm::LInf, Box{OpinionVector{0.0, 0.0, 0.0}, OpinionVector{2.0, 2.0, 2.0}});
  EXPECT_NEAR(expected_center_distance(UniformShape{}, cube, 1, rng), 3.0 / 4.0, 1e-15);
}

}  // namespace
}  // namespace hkc
