#include <gtest/gtest.h>

#include "aags/choquet.hpp"
#include "aags/evidence.hpp"
#include "aags/random.hpp"
#include "aags_oracles/oracles.hpp"

namespace aags {
namespace {

const ValueBounds kUnit{0.0, 1.0};

TEST(Choquet, WorkedExample) {
  const BeliefFunction bf(2, {{Proposition::of({0}), 0.1}, {Proposition::of({1}), 0.3}, {Proposition::of({0, 1}), 0.6}});
  const std::vector<double> v = {0.0, 1.0};
  EXPECT_NEAR(choquet_lower(bf, v, kUnit), 0.3, 1e-12);
  EXPECT_NEAR(choquet_upper(bf, v, kUnit), 0.9, 1e-12);
  const auto oracle = oracles::credal_vertices(bf, v, 0.0, 1.0);
  EXPECT_NEAR(oracle.lower, 0.3, 1e-12);
  EXPECT_NEAR(oracle.upper, 0.9, 1e-12);
}

TEST(Choquet, PointMassIsOrdinaryExpectation) {
  const BeliefFunction bf(3, {{Proposition::of({0}), 0.2}, {Proposition::of({1}), 0.5}, {Proposition::of({2}), 0.3}});
  const std::vector<double> v = {1.0, -2.0, 4.0};
  const double mean = 0.2 * 1.0 + 0.5 * -2.0 + 0.3 * 4.0;
  EXPECT_NEAR(choquet_lower(bf, v, {-5, 5}), mean, 1e-12);
  EXPECT_NEAR(choquet_upper(bf, v, {-5, 5}), mean, 1e-12);
}

TEST(Choquet, VacuousGoesToExtremes) {
  const std::vector<double> v = {0.3, 0.7};
  EXPECT_EQ(choquet_lower(BeliefFunction::vacuous(2), v, {-1, 1}), 0.3);
  const BeliefFunction boundary_only(2, {}, 1.0);
  EXPECT_EQ(choquet_lower(boundary_only, v, {-1, 1}), -1.0);
  EXPECT_EQ(choquet_upper(boundary_only, v, {-1, 1}), 1.0);
}

TEST(Choquet, Errors) {
  const BeliefFunction bf = BeliefFunction::vacuous(2);
  const std::vector<double> short_values = {0.0};
  EXPECT_THROW(choquet_lower(bf, short_values, kUnit), std::invalid_argument);
  const std::vector<double> v = {0.0, 1.0};
  EXPECT_THROW(choquet_upper(bf, v, {1.0, 0.0}), std::invalid_argument);
}

TEST(Choquet, ConvergesToEmpiricalMean) {
  const EmpiricalDistribution p({300000, 500000, 200000});
  const MassAssignment m = dist2belief_with_accuracy(p, accuracy_for(0.1, p.total()), 0.0);
  const std::vector<double> v = {0.0, 0.5, 1.0};
  const double mean = 0.5 * 0.5 + 0.2;
  EXPECT_NEAR(choquet_lower(m.belief, v, kUnit), mean, 1e-4);
  EXPECT_NEAR(choquet_upper(m.belief, v, kUnit), mean, 1e-4);
}

TEST(ChoquetProperties, MatchesVertexEnumerationWithBoundary) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    std::vector<std::uint64_t> counts(n);
    for (auto& c : counts) c = 1 + rng.index(30);
    const double delta = 0.3 * rng.uniform();
    const MassAssignment m = dist2belief_with_accuracy(EmpiricalDistribution(counts), 0.25 * rng.uniform(), delta);
    std::vector<double> v(n);
    for (double& x : v) x = -1.0 + 3.0 * rng.uniform();
    const ValueBounds b{-1.0, 2.0};
    const double lo = choquet_lower(m.belief, v, b);
    const double hi = choquet_upper(m.belief, v, b);
    const auto oracle = oracles::credal_vertices(m.belief, v, b.lower, b.upper);
    EXPECT_NEAR(lo, oracle.lower, 1e-9);
    EXPECT_NEAR(hi, oracle.upper, 1e-9);
    EXPECT_LE(lo, hi);
  }
}

TEST(ChoquetProperties, ZeroMassOutcomeLeavesBothBitIdentical) {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    std::vector<std::uint64_t> counts(n);
    for (auto& c : counts) c = 1 + rng.index(30);
    const MassAssignment m = dist2belief_with_accuracy(EmpiricalDistribution(counts), 0.2 * rng.uniform(), 0.1);
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform();
    const ValueBounds b{0.0, 1.0};
    const BeliefFunction extended = m.belief.with_extra_outcome();
    std::vector<double> ve = v;
    ve.push_back(b.lower + (b.upper - b.lower) * rng.uniform());
    EXPECT_EQ(choquet_lower(m.belief, v, b), choquet_lower(extended, ve, b));
    EXPECT_EQ(choquet_upper(m.belief, v, b), choquet_upper(extended, ve, b));
  }
}

}  // namespace
}  // namespace aags
