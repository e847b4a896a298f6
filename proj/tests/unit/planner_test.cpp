#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "aags/env/grid_world.hpp"
#include "aags/env/toy_models.hpp"
#include "aags/planner.hpp"

namespace aags {
namespace {

// Counts generator calls per state-action pair.
class CountingModel : public GenerativeModel {
 public:
  explicit CountingModel(const GenerativeModel& inner) : inner_(inner) {}
  std::size_t num_actions(StateId s) const override { return inner_.num_actions(s); }
  Observation sample(StateId s, ActionId a, Rng& rng) const override {
    ++calls_[{s.value, a.value}];
    return inner_.sample(s, a, rng);
  }
  const std::map<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t>& calls() const { return calls_; }

 private:
  const GenerativeModel& inner_;
  mutable std::map<std::pair<std::uint64_t, std::uint32_t>, std::uint64_t> calls_;
};

AagsConfig config_with(double alpha, std::size_t n, std::size_t horizon = 10, std::uint64_t seed = 1) {
  AagsConfig c;
  c.alpha = alpha;
  c.n_trajectories = n;
  c.horizon = horizon;
  c.seed = seed;
  return c;
}

env::Bandit deterministic_bandit() { return env::Bandit(env::BanditConfig{}); }

TEST(AagsPlanner, DeterministicBanditPicksRewardingArm) {
  const env::Bandit bandit = deterministic_bandit();
  for (double alpha : {0.0, 0.3, 0.7, 1.0}) {
    AagsPlanner planner(bandit, bandit.spec(), config_with(alpha, 10));
    EXPECT_EQ(planner.search(StateId{0}).value, 1U) << alpha;
  }
}

// Arm 0 pays 0.5; arm 1 alternates between 0 and 1, so its two outcomes
// are always sampled equally often.
class AlternatingBandit : public GenerativeModel {
 public:
  std::size_t num_actions(StateId s) const override { return s.value == 0 ? 2 : 0; }
  Observation sample(StateId, ActionId a, Rng&) const override {
    if (a.value == 0) return {StateId{1}, 0.5, true};
    flip_ = !flip_;
    return {StateId{flip_ ? 2U : 3U}, flip_ ? 1.0 : 0.0, true};
  }

 private:
  mutable bool flip_ = false;
};

TEST(AagsPlanner, AmbiguityAttitudeSplitsOnAmbiguousArm) {
  const AmdpSpec spec{0.5, 0.0, 1.0};
  for (double alpha : {0.0, 1.0}) {
    const AlternatingBandit model;
    AagsConfig c = config_with(alpha, 20);
    // Never known within the budget, so every draw comes from the model.
    c.confidence = {0.01, 0.5};
    AagsPlanner planner(model, spec, c);
    const ActionId a = planner.search(StateId{0});
    const EdgeStatistics& ambiguous = planner.graph().find(StateId{0})->edges[1].stats;
    ASSERT_EQ(ambiguous.support(), 2U);
    EXPECT_LE(std::max(ambiguous.counts().count(0), ambiguous.counts().count(1)) -
                  std::min(ambiguous.counts().count(0), ambiguous.counts().count(1)),
              1U);
    EXPECT_EQ(a.value, alpha == 0.0 ? 0U : 1U) << alpha;
  }
}

TEST(AagsPlanner, UnvisitedActionIsVacuous) {
  const env::Bandit bandit = deterministic_bandit();
  AagsPlanner planner(bandit, bandit.spec(), config_with(0.0, 1));
  const ActionBounds b = planner.action_bounds(StateId{0}, ActionId{1});
  EXPECT_EQ(b.lower, bandit.spec().v_min());
  EXPECT_EQ(b.upper, bandit.spec().v_max());
}

TEST(AagsPlanner, KnownTerminalRewardLeavesOnlyDiscountResidual) {
  env::BanditConfig cfg;
  cfg.arms = {{{1.0, 1.0}}};
  const env::Bandit bandit(cfg);
  AagsPlanner planner(bandit, bandit.spec(), config_with(0.0, 10000, 1));
  planner.search(StateId{0});
  const ActionBounds b = planner.action_bounds(StateId{0}, ActionId{0});
  const double delta = planner.config().confidence.delta;
  EXPECT_NEAR(b.lower, (1.0 - delta) * 1.0 + delta * bandit.spec().v_min(), 1e-12);
  EXPECT_NEAR(b.upper, (1.0 - delta) * 1.0 + delta * bandit.spec().v_max(), 1e-12);
}

TEST(AagsPlanner, TwoStateChainWithinDiscountSlack) {
  const env::Chain chain(env::ChainConfig{2, 0.5});
  AagsPlanner planner(chain, chain.spec(), config_with(0.0, 200));
  planner.search(StateId{0});
  const SearchNode* root = planner.graph().find(StateId{0});
  ASSERT_NE(root, nullptr);
  const double slack = planner.config().confidence.delta * (chain.spec().v_max() - chain.spec().v_min());
  EXPECT_NEAR(root->lower, 1.0, slack + 1e-9);
  EXPECT_NEAR(root->upper, 1.0, slack + 1e-9);
}

TEST(AagsPlanner, BoundsSandwichedAndMonotone) {
  const env::GridWorld grid(env::GridWorldConfig{8, 8, 0.1, {0, 0}, {7, 7}, 1.0, 0.0, 0.95});
  AagsPlanner planner(grid, grid.spec(), config_with(0.5, 1, 10, 3));
  const ValueBounds vb = grid.spec().value_bounds();
  std::map<std::uint64_t, std::pair<double, double>> last;
  for (int round = 0; round < 150; ++round) {
    planner.search(grid.encode({0, 0}));
    for (const auto& [id, node] : planner.graph().nodes()) {
      EXPECT_LE(vb.lower, node.lower);
      EXPECT_LE(node.lower, node.upper);
      EXPECT_LE(node.upper, vb.upper);
      for (std::size_t a = 0; a < node.edges.size(); ++a) {
        EXPECT_LE(node.edges[a].bounds.lower, node.edges[a].bounds.upper + 1e-12);
      }
      const auto it = last.find(id.value);
      if (it != last.end()) {
        EXPECT_GE(node.lower, it->second.first);
        EXPECT_LE(node.upper, it->second.second);
      }
      last[id.value] = {node.lower, node.upper};
    }
  }
}

TEST(AagsPlanner, ConvergedGraphEnqueuesNothing) {
  const env::Chain chain(env::ChainConfig{3, 0.9});
  AagsPlanner planner(chain, chain.spec(), config_with(0.0, 100));
  planner.search(StateId{0});
  const std::vector<StateId> trace = {StateId{0}, StateId{1}, StateId{2}};
  planner.backpropagate(trace);
  EXPECT_EQ(planner.backpropagate(trace), 0U);
  const std::vector<StateId> missing = {StateId{0}, StateId{99}};
  EXPECT_THROW(planner.backpropagate(missing), std::invalid_argument);
}

TEST(AagsPlanner, RecommendationExtremesMatchBoundArgmax) {
  const env::GridWorld grid(env::GridWorldConfig{6, 6, 0.1, {1, 1}, {5, 5}, 1.0, 0.0, 0.95});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    AagsPlanner planner(grid, grid.spec(), config_with(0.5, 60, 6, seed));
    const StateId s0 = grid.encode({1, 1});
    planner.search(s0);
    const SearchNode* root = planner.graph().find(s0);
    double best_lower = -1e300;
    double best_upper = -1e300;
    for (const SearchEdge& e : root->edges) {
      if (e.stats.visits() == 0) continue;
      best_lower = std::max(best_lower, e.bounds.lower);
      best_upper = std::max(best_upper, e.bounds.upper);
    }
    const ActionId robust = planner.recommend(s0, 0.0);
    const ActionId optimistic = planner.recommend(s0, 1.0);
    EXPECT_EQ(root->edges[robust.value].bounds.lower, best_lower);
    EXPECT_EQ(root->edges[optimistic.value].bounds.upper, best_upper);
  }
}

TEST(Hurwicz, CrossoverAtPointFour) {
  const std::vector<ActionBounds> bounds = {{0.4, 0.6}, {0.2, 0.9}};
  EXPECT_EQ(hurwicz_ties(bounds, 0.0), std::vector<std::size_t>{0});
  EXPECT_EQ(hurwicz_ties(bounds, 1.0), std::vector<std::size_t>{1});
  EXPECT_EQ(hurwicz_ties(bounds, 0.39), std::vector<std::size_t>{0});
  EXPECT_EQ(hurwicz_ties(bounds, 0.41), std::vector<std::size_t>{1});
}

TEST(Hurwicz, ExactTiesAreAllReturned) {
  const std::vector<ActionBounds> bounds = {{0.5, 0.5}, {0.25, 0.75}, {0.0, 0.5}};
  EXPECT_EQ(hurwicz_ties(bounds, 0.5), (std::vector<std::size_t>{0, 1}));
}

TEST(Hurwicz, TwoActionsSwitchAtMostOnce) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ActionBounds> bounds(2);
    for (ActionBounds& b : bounds) {
      const double x = rng.uniform();
      const double y = rng.uniform();
      b = {std::min(x, y), std::max(x, y)};
    }
    int switches = 0;
    std::size_t prev = hurwicz_ties(bounds, 0.0).front();
    for (int k = 1; k <= 1000; ++k) {
      const auto ties = hurwicz_ties(bounds, k / 1000.0);
      if (ties.size() != 1) continue;
      if (ties.front() != prev) ++switches;
      prev = ties.front();
    }
    EXPECT_LE(switches, 1);
  }
}

TEST(AagsPlanner, KnownPairsStopCallingGenerator) {
  const env::GridWorld grid(env::GridWorldConfig{6, 6, 0.1, {0, 0}, {5, 5}, 1.0, 0.0, 0.95});
  const CountingModel counting(grid);
  AagsConfig c = config_with(0.0, 300, 8, 5);
  AagsPlanner planner(counting, grid.spec(), c);
  planner.search(grid.encode({0, 0}));
  planner.search(grid.encode({0, 0}));
  const auto limit = static_cast<std::uint64_t>(std::ceil(required_samples(c.confidence)));
  ASSERT_FALSE(counting.calls().empty());
  for (const auto& [pair, calls] : counting.calls()) EXPECT_LE(calls, limit);
  std::uint64_t total = 0;
  for (const auto& [pair, calls] : counting.calls()) total += calls;
  EXPECT_EQ(total, planner.generator_calls());
}

TEST(AagsPlanner, RootSelectionSwitchRuns) {
  const env::GridWorld grid(env::GridWorldConfig{6, 6, 0.1, {0, 0}, {5, 5}, 1.0, 0.0, 0.95});
  AagsConfig c = config_with(0.0, 50, 6, 9);
  c.root_action_selection = true;
  AagsPlanner planner(grid, grid.spec(), c);
  const ActionId a = planner.search(grid.encode({0, 0}));
  EXPECT_LT(a.value, 4U);
}

TEST(AagsPlanner, DeterministicForSeed) {
  const env::GridWorld grid(env::GridWorldConfig{8, 8, 0.1, {0, 0}, {7, 7}, 1.0, 0.0, 0.95});
  AagsPlanner a(grid, grid.spec(), config_with(0.5, 100, 10, 4));
  AagsPlanner b(grid, grid.spec(), config_with(0.5, 100, 10, 4));
  EXPECT_EQ(a.search(grid.encode({2, 2})), b.search(grid.encode({2, 2})));
  EXPECT_EQ(a.graph().size(), b.graph().size());
}

TEST(AagsPlanner, Errors) {
  const env::Chain chain(env::ChainConfig{3, 0.9});
  EXPECT_THROW(AagsPlanner(chain, chain.spec(), config_with(0.0, 0)), std::invalid_argument);
  EXPECT_THROW(AagsPlanner(chain, chain.spec(), config_with(1.5, 10)), std::invalid_argument);
  EXPECT_THROW(AagsPlanner(chain, chain.spec(), config_with(0.0, 10, 0)), std::invalid_argument);
  AagsPlanner planner(chain, chain.spec(), config_with(0.0, 10));
  EXPECT_THROW(planner.search(StateId{2}), std::invalid_argument);
  EXPECT_THROW(planner.recommend(StateId{1}), std::invalid_argument);
}

}  // namespace
}  // namespace aags
