#include "hkc/trial.hpp"

#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "hkc/analysis.hpp"

namespace hkc {
namespace {

const OpinionSpace kUnit(Norm::L1, Box{OpinionVector{0.0}, OpinionVector{1.0}});

Configuration line_config(std::initializer_list<double> values) {
  std::vector<OpinionVector> ops;
  for (const double v : values) ops.push_back(OpinionVector{v});
  return Configuration(ops);
}

TEST(TrialEngine, CompatiblePairReachesConsensusInOneEvent) {
  const SocialGraph g = generate(PathGraph{2});
  const ModelParams params{0.5, 0.0};
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.1, 2);
  TrialEngine engine(g, kUnit, params, stop, line_config({0.2, 0.6}));
  RandomStream rng(3);
  EXPECT_FALSE(engine.at_stop());
  EXPECT_TRUE(engine.run_until_stop(rng, 100));
  EXPECT_EQ(engine.events(), 1u);
  EXPECT_EQ(engine.config().opinion(0)[0], engine.config().opinion(1)[0]);
  EXPECT_TRUE(classify_consensus(engine.config(), g, stop, params.tau, Norm::L1));
}

TEST(TrialEngine, IncompatiblePairIsFrozen) {
  const SocialGraph g = generate(PathGraph{2});
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.1, 2);
  TrialEngine engine(g, kUnit, {0.5, 0.0}, stop, line_config({0.0, 0.9}));
  RandomStream rng(3);
  EXPECT_TRUE(engine.at_stop());
  EXPECT_TRUE(engine.absorbed());
  EXPECT_FALSE(engine.step(rng).has_value());
  EXPECT_FALSE(classify_consensus(engine.config(), g, stop, 0.5, Norm::L1));
}

TEST(TrialEngine, BandCountMatchesFullScan) {
  RandomStream rng(9);
  const SocialGraph g = generate(GridGraph{4, 4});
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.05, g.vertex_count());
  TrialEngine engine(g, kUnit, {0.3, 0.2}, stop,
                     sample_configuration(g.vertex_count(), kUnit, UniformShape{}, rng));
  for (int i = 0; i < 500 && engine.step(rng); ++i) {
    std::size_t band = 0;
    for (const Edge& e : g.edges()) {
      const double d = distance(engine.config().opinion(e.u), engine.config().opinion(e.v), Norm::L1);
      band += in_stopping_band(d, stop.eps, 0.3);
    }
    ASSERT_EQ(engine.band_edges(), band);
    ASSERT_EQ(engine.at_stop(), stop_reached(engine.config(), g, stop, 0.3, Norm::L1));
  }
}

TEST(RunTrial, TwoVertexLawOutcomes) {
  const SocialGraph g = generate(PathGraph{2});
  // tau = 1 covers the whole interval: every pair is compatible.
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.005, 2);
  RandomStream rng(1);
  const TrialOutcome t = run_trial(g, kUnit, UniformShape{}, {1.0, 0.0}, stop, rng);
  EXPECT_TRUE(t.stopped);
  EXPECT_EQ(t.events, 1u);
  EXPECT_EQ(t.consensus, std::optional<bool>(true));
  EXPECT_GT(t.stop_time, 0.0);
  ASSERT_EQ(t.x_samples.size(), 2u);
  EXPECT_EQ(t.x_samples[0].time, 0.0);
  EXPECT_EQ(t.x_samples[1].time, t.stop_time);
}

TEST(RunTrial, FrozenPairStopsWithoutEvents) {
  const SocialGraph g = generate(PathGraph{2});
  const InitialDistribution spread = PointMasses{{{OpinionVector{0.0}, 0.5}, {OpinionVector{1.0}, 0.5}}};
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.1, 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream rng(seed);
    const TrialOutcome t = run_trial(g, kUnit, spread, {0.5, 0.0}, stop, rng);
    EXPECT_TRUE(t.stopped);
    if (t.final.opinion(0)[0] != t.final.opinion(1)[0]) {
      EXPECT_EQ(t.events, 0u);
      EXPECT_TRUE(t.absorbed);
      EXPECT_EQ(t.consensus, std::optional<bool>(false));
    } else {
      EXPECT_EQ(t.consensus, std::optional<bool>(true));
    }
  }
}

TEST(RunTrial, DeterministicPerSeed) {
  const SocialGraph g = generate(CycleGraph{8});
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.003, 8);
  RandomStream a(2024, 5);
  RandomStream b(2024, 5);
  const TrialOutcome ta = run_trial(g, kUnit, UniformShape{}, {0.8, 0.0}, stop, a);
  const TrialOutcome tb = run_trial(g, kUnit, UniformShape{}, {0.8, 0.0}, stop, b);
  EXPECT_EQ(ta, tb);
  EXPECT_GT(ta.events, 0u);
  EXPECT_EQ(ta.x_samples.size(), ta.events + 1);
}

TEST(RunTrial, CapHitLeavesClassificationUndetermined) {
  const SocialGraph g = generate(PathGraph{8});
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.003, 8, 3);
  RandomStream rng(11);
  const TrialOutcome t = run_trial(g, kUnit, UniformShape{}, {1.0, 0.0}, stop, rng);
  EXPECT_FALSE(t.stopped);
  EXPECT_EQ(t.events, 3u);
  EXPECT_FALSE(t.consensus.has_value());
  EXPECT_FALSE(t.event_A.has_value());
}

TEST(RunTrial, EventANotEvaluatedOutsideItsRegime) {
  const SocialGraph g = generate(PathGraph{3});
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.1, 3);
  RandomStream rng(4);
  const TrialOutcome t = run_trial(g, kUnit, UniformShape{}, {0.4, 0.0}, stop, rng);
  ASSERT_TRUE(t.stopped);
  EXPECT_FALSE(t.event_A.has_value());
}

TEST(RunTrial, TraceCsv) {
  const SocialGraph g = generate(PathGraph{4});
  const StoppingSpec stop = StoppingSpec::from_eps_prime(0.004, 4);
  RandomStream rng(6);
  std::ostringstream csv;
  const TrialOutcome t =
      run_trial(g, kUnit, UniformShape{}, {1.0, 0.0}, stop, rng, {.record_x_samples = true, .trace = &csv});
  std::istringstream lines(csv.str());
  std::string line;
  ASSERT_TRUE(std::getline(lines, line));
  EXPECT_EQ(line, "event,time,vertex,x_center,max_pair_dist");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);
    EXPECT_EQ(line.rfind(std::to_string(rows) + ",", 0), 0u);
  }
  EXPECT_EQ(rows, t.events);
  // X(center) column is the recorded sample.
  std::istringstream again(csv.str());
  std::getline(again, line);
  std::getline(again, line);
  const auto fields = [&] {
    std::vector<std::string> out;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
    return out;
  }();
  EXPECT_EQ(std::stod(fields[3]), t.x_samples[1].value);
}

}  // namespace
}  // namespace hkc
