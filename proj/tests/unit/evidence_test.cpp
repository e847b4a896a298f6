#include <gtest/gtest.h>

#include <numeric>

#include "aags/evidence.hpp"
#include "aags/random.hpp"

namespace aags {
namespace {

TEST(IntervalBounds, DirectClamp) {
  const EmpiricalDistribution p({4, 6});
  const IntervalBounds b = interval_bounds(p, 0.1);
  EXPECT_NEAR(b.bel[0], 0.3, 1e-12);
  EXPECT_NEAR(b.bel[1], 0.5, 1e-12);
  EXPECT_NEAR(b.pl[0], 0.5, 1e-12);
  EXPECT_NEAR(b.pl[1], 0.7, 1e-12);
}

TEST(IntervalBounds, ClampsAtZeroAndOne) {
  const IntervalBounds b = interval_bounds(EmpiricalDistribution({1, 19}), 0.1);
  EXPECT_EQ(b.bel[0], 0.0);
  EXPECT_NEAR(b.bel[1], 0.85, 1e-12);
  EXPECT_NEAR(b.pl[0], 0.15, 1e-12);
  EXPECT_EQ(b.pl[1], 1.0);
}

TEST(IntervalBounds, ZeroAccuracyIsDegenerate) {
  const IntervalBounds b = interval_bounds(EmpiricalDistribution({1, 3}), 0.0);
  EXPECT_EQ(b.bel[0], 0.25);
  EXPECT_EQ(b.pl[0], 0.25);
  EXPECT_THROW(interval_bounds(EmpiricalDistribution({1}), 1.5), std::invalid_argument);
  EXPECT_THROW(interval_bounds(EmpiricalDistribution(), 0.1), std::invalid_argument);
}

TEST(MassSystem, Shapes) {
  const MassSystem& two = assemble_system(2);
  EXPECT_EQ(two.matrix().rows(), 3);
  EXPECT_EQ(two.matrix().cols(), 1);
  EXPECT_EQ(two.matrix().col(0).sum(), 3.0);

  const MassSystem& three = assemble_system(3);
  EXPECT_EQ(three.matrix().rows(), 4);
  EXPECT_EQ(three.matrix().cols(), 4);
  const std::vector<std::uint64_t> expected = {0b011, 0b101, 0b110, 0b111};
  EXPECT_EQ(std::vector<std::uint64_t>(three.column_masks().begin(), three.column_masks().end()), expected);

  for (std::size_t n = 2; n <= 12; ++n) {
    EXPECT_EQ(assemble_system(n).columns(), (std::size_t{1} << n) - n - 1);
  }
  EXPECT_THROW(assemble_system(1), std::invalid_argument);
  EXPECT_THROW(assemble_system(13), std::invalid_argument);
}

TEST(MassSystem, PseudoInverseIsMinimumNorm) {
  const MassSystem& s = assemble_system(4);
  const Eigen::MatrixXd& a = s.matrix();
  const Eigen::MatrixXd& p = s.pseudo_inverse();
  EXPECT_LT((a * p * a - a).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((p * a * p - p).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Dist2Belief, TwoOutcomesUniqueSolution) {
  const MassAssignment m = dist2belief_with_accuracy(EmpiricalDistribution({4, 6}), 0.1, 0.0);
  EXPECT_NEAR(m.belief.mass(Proposition::of({0})), 0.3, 1e-12);
  EXPECT_NEAR(m.belief.mass(Proposition::of({1})), 0.5, 1e-12);
  EXPECT_NEAR(m.belief.mass(Proposition::of({0, 1})), 0.2, 1e-12);
  EXPECT_FALSE(m.projected);
}

TEST(Dist2Belief, DiscountScalesAndAddsBoundary) {
  const MassAssignment m = dist2belief_with_accuracy(EmpiricalDistribution({4, 6}), 0.1, 0.1);
  EXPECT_NEAR(m.belief.mass(Proposition::of({0})), 0.27, 1e-12);
  EXPECT_NEAR(m.belief.mass(Proposition::of({1})), 0.45, 1e-12);
  EXPECT_NEAR(m.belief.mass(Proposition::of({0, 1})), 0.18, 1e-12);
  EXPECT_NEAR(m.belief.boundary_mass(), 0.1, 1e-12);
  EXPECT_NEAR(m.belief.total_mass(), 1.0, 1e-9);
}

TEST(Dist2Belief, SingleOutcomeTakesAllMass) {
  // With one outcome the full set is the singleton: Bel = 1 - eps plus the
  // eps residual of the total-mass row lands on the same proposition.
  const MassAssignment m = dist2belief_with_accuracy(EmpiricalDistribution({7}), 0.1, 0.0);
  EXPECT_NEAR(m.belief.mass(Proposition::of({0})), 1.0, 1e-12);
  EXPECT_NEAR(m.belief.total_mass(), 1.0, 1e-9);
}

TEST(Dist2Belief, AccuracyFromSampleCount) {
  const EmpiricalDistribution p({30, 70});
  const MassAssignment m = dist2belief(p, 0.1);
  EXPECT_DOUBLE_EQ(m.epsilon, accuracy_for(0.1, 100));
  EXPECT_NEAR(m.belief.total_mass(), 1.0, 1e-9);
  EXPECT_THROW(dist2belief(p, 0.95), DomainError);
  EXPECT_THROW(dist2belief(EmpiricalDistribution(std::vector<std::uint64_t>(13, 1)), 0.1), std::invalid_argument);
}

TEST(Dist2Belief, ThreeOutcomesSolveExactly) {
  // For n = 3 the system has an exact nonnegative solution whenever the
  // bounds are unclamped.
  const MassAssignment m = dist2belief_with_accuracy(EmpiricalDistribution({2, 3, 5}), 0.05, 0.0);
  EXPECT_FALSE(m.projected);
  EXPECT_LT(m.residual, 1e-12);
  for (std::size_t i = 0; i < 3; ++i) {
    const double f = (i == 0 ? 0.2 : i == 1 ? 0.3 : 0.5);
    EXPECT_NEAR(bel(m.belief, Proposition::singleton(i)), f - 0.05, 1e-12);
    EXPECT_NEAR(pl(m.belief, Proposition::singleton(i)), f + 0.05, 1e-9);
  }
}

TEST(Dist2BeliefProperties, ConsistencyOnRandomInstances) {
  Rng rng(2024);
  int projected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    std::vector<std::uint64_t> counts(n);
    for (auto& c : counts) c = 1 + rng.index(40);
    const EmpiricalDistribution p(counts);
    const double eps = 0.3 * rng.uniform();
    const MassAssignment m = dist2belief_with_accuracy(p, eps, 0.0);
    projected += m.projected ? 1 : 0;
    EXPECT_NEAR(m.belief.total_mass(), 1.0, 1e-9);
    for (const FocalElement& f : m.belief.focal()) EXPECT_GE(f.mass, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double freq = p.frequency(i);
      const double target_bel = std::max(freq - eps, 0.0);
      const double target_pl = std::min(freq + eps, 1.0);
      EXPECT_EQ(bel(m.belief, Proposition::singleton(i)), target_bel);
      const double got_pl = pl(m.belief, Proposition::singleton(i));
      if (!m.projected) {
        EXPECT_NEAR(got_pl, target_pl, 1e-6);
      } else {
        EXPECT_LE(got_pl, target_pl + 1e-6);
      }
    }
  }
  RecordProperty("projected", projected);
}

TEST(SolveCompoundMasses, RepairPushesCorrectionToFullSet) {
  const MassSystem& s = assemble_system(3);
  // Singletons want no ambiguity while the total row wants 0.3.
  const std::vector<double> rhs = {0.0, 0.0, 0.0, 0.3};
  const CompoundSolution sol = solve_compound_masses(s, rhs);
  const double total = std::accumulate(sol.masses.begin(), sol.masses.end(), 0.0);
  EXPECT_NEAR(total, 0.3, 1e-12);
  for (double m : sol.masses) EXPECT_GE(m, 0.0);
  EXPECT_TRUE(sol.projected);
}

TEST(BinOutcomes, IdentityUnderCap) {
  const EmpiricalDistribution p({1, 2, 3, 4, 5});
  const BinnedDistribution b = bin_outcomes(p);
  EXPECT_FALSE(b.merged);
  EXPECT_EQ(b.dist.size(), 5U);
  EXPECT_EQ(b.groups[3], std::vector<std::size_t>{3});
}

TEST(BinOutcomes, FourteenEqualCountsMergeLowestOrder) {
  const EmpiricalDistribution p(std::vector<std::uint64_t>(14, 2));
  const BinnedDistribution b = bin_outcomes(p, 12);
  EXPECT_TRUE(b.merged);
  ASSERT_EQ(b.dist.size(), 12U);
  EXPECT_EQ(b.groups.back(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(b.dist.count(11), 6U);
  EXPECT_EQ(b.groups[0], std::vector<std::size_t>{3});
  EXPECT_EQ(b.dist.total(), p.total());
}

TEST(BinOutcomes, MergesLowestCounts) {
  const EmpiricalDistribution p({5, 1, 4, 1, 3});
  const BinnedDistribution b = bin_outcomes(p, 3);
  ASSERT_EQ(b.dist.size(), 3U);
  EXPECT_EQ(b.groups[0], std::vector<std::size_t>{0});
  EXPECT_EQ(b.groups[1], std::vector<std::size_t>{2});
  EXPECT_EQ(b.groups[2], (std::vector<std::size_t>{1, 3, 4}));
  EXPECT_EQ(b.dist.count(2), 5U);
  EXPECT_THROW(bin_outcomes(p, 1), std::invalid_argument);
}

}  // namespace
}  // namespace aags
