#include <gtest/gtest.h>

#include "aags/belief_function.hpp"
#include "aags/random.hpp"

namespace aags {
namespace {

BeliefFunction worked_example() {
  return BeliefFunction(2, {{Proposition::of({0}), 0.1}, {Proposition::of({1}), 0.3}, {Proposition::of({0, 1}), 0.6}});
}

TEST(Proposition, CanonicalEncoding) {
  EXPECT_EQ(Proposition::of({0, 2}), Proposition::of({2, 0}));
  EXPECT_EQ(Proposition::of({0, 2}).mask(), 0b101U);
  EXPECT_EQ(Proposition::full(3).size(), 3U);
  EXPECT_TRUE(Proposition::of({1}).subset_of(Proposition::of({0, 1})));
  EXPECT_FALSE(Proposition::of({0, 1}).subset_of(Proposition::of({1})));
  EXPECT_EQ(Proposition::of({4}).extent(), 5U);
}

TEST(Proposition, RejectsEmptyAndOutOfRange) {
  EXPECT_THROW(Proposition(0), InvalidProposition);
  EXPECT_THROW(Proposition::singleton(63), InvalidProposition);
  EXPECT_THROW(Proposition::full(0), InvalidProposition);
}

TEST(BeliefFunction, WorkedExampleBelPl) {
  const BeliefFunction bf = worked_example();
  EXPECT_DOUBLE_EQ(bel(bf, Proposition::of({0})), 0.1);
  EXPECT_DOUBLE_EQ(pl(bf, Proposition::of({0})), 0.7);
  EXPECT_DOUBLE_EQ(bel(bf, Proposition::full(2)), 1.0);
}

TEST(BeliefFunction, Vacuous) {
  const BeliefFunction bf = BeliefFunction::vacuous(3);
  EXPECT_EQ(bel(bf, Proposition::of({0, 1})), 0.0);
  EXPECT_EQ(bel(bf, Proposition::of({2})), 0.0);
  EXPECT_EQ(pl(bf, Proposition::of({2})), 1.0);
  EXPECT_EQ(pl(bf, Proposition::of({0, 1})), 1.0);
  EXPECT_EQ(bel(bf, Proposition::full(3)), 1.0);
}

TEST(BeliefFunction, CanonicalStorageMergesAndDropsZeros) {
  const BeliefFunction bf(3, {{Proposition::of({0, 1}), 0.2},
                              {Proposition::of({2}), 0.0},
                              {Proposition::of({0}), 0.3},
                              {Proposition::of({0, 1}), 0.5}});
  ASSERT_EQ(bf.focal().size(), 2U);
  EXPECT_EQ(bf.focal()[0].set, Proposition::of({0}));
  EXPECT_DOUBLE_EQ(bf.mass(Proposition::of({0, 1})), 0.7);
  EXPECT_EQ(bf.mass(Proposition::of({2})), 0.0);
}

TEST(BeliefFunction, RejectsInvalidMasses) {
  EXPECT_THROW(BeliefFunction(2, {{Proposition::of({0}), 0.5}}), std::invalid_argument);
  EXPECT_THROW(BeliefFunction(2, {{Proposition::of({0}), 1.5}}), std::invalid_argument);
  EXPECT_THROW(BeliefFunction(2, {{Proposition::of({0}), -0.1}, {Proposition::of({1}), 1.1}}),
               std::invalid_argument);
  EXPECT_THROW(BeliefFunction(2, {{Proposition::of({2}), 1.0}}), InvalidProposition);
  EXPECT_THROW(BeliefFunction(0, {}), std::invalid_argument);
}

TEST(BeliefFunction, UnknownOutcomeIndexInQuery) {
  const BeliefFunction bf = worked_example();
  EXPECT_THROW(bel(bf, Proposition::of({2})), InvalidProposition);
  EXPECT_THROW(pl(bf, Proposition::of({0, 5})), InvalidProposition);
}

TEST(BeliefFunction, BoundaryCountsOnlyForPlausibility) {
  const BeliefFunction bf(2, {{Proposition::of({0}), 0.9}}, 0.1);
  EXPECT_DOUBLE_EQ(bel(bf, Proposition::full(2)), 0.9);
  EXPECT_DOUBLE_EQ(pl(bf, Proposition::of({1})), 0.1);
  EXPECT_DOUBLE_EQ(bf.total_mass(), 1.0);
}

TEST(Discount, IdentityAndVacuousAndTotal) {
  const BeliefFunction bf = worked_example();
  const BeliefFunction same = discount(bf, 0.0);
  EXPECT_EQ(same.boundary_mass(), 0.0);
  for (const FocalElement& f : bf.focal()) EXPECT_EQ(same.mass(f.set), f.mass);

  const BeliefFunction all = discount(bf, 1.0);
  EXPECT_EQ(all.boundary_mass(), 1.0);
  EXPECT_TRUE(all.focal().empty());

  const BeliefFunction some = discount(bf, 0.1);
  EXPECT_NEAR(some.total_mass(), 1.0, 1e-12);
  EXPECT_NEAR(some.mass(Proposition::of({0, 1})), 0.54, 1e-12);
  EXPECT_NEAR(some.boundary_mass(), 0.1, 1e-12);
  EXPECT_THROW(discount(bf, 1.5), std::invalid_argument);
}

TEST(BeliefFunction, ExtraOutcomeIsUnsupported) {
  const BeliefFunction bf = worked_example().with_extra_outcome();
  EXPECT_EQ(bf.num_outcomes(), 3U);
  EXPECT_EQ(bel(bf, Proposition::of({2})), 0.0);
  EXPECT_EQ(pl(bf, Proposition::of({2})), 0.0);
}

// Random belief functions over n <= 6 outcomes with optional boundary mass.
BeliefFunction random_bf(Rng& rng, std::size_t n) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<FocalElement> focal;
  std::vector<double> raw;
  const std::size_t k = 1 + rng.index(6);
  for (std::size_t i = 0; i < k; ++i) {
    focal.push_back({Proposition(1 + rng.index(full)), 0.0});
    raw.push_back(rng.uniform() + 1e-3);
  }
  const double boundary_raw = rng.bernoulli(0.5) ? rng.uniform() : 0.0;
  double total = boundary_raw;
  for (double r : raw) total += r;
  for (std::size_t i = 0; i < k; ++i) focal[i].mass = raw[i] / total;
  return BeliefFunction(n, focal, boundary_raw / total);
}

TEST(BeliefFunctionProperties, DualityAndMonotonicity) {
  Rng rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const BeliefFunction bf = random_bf(rng, n);
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    EXPECT_NEAR(bf.total_mass(), 1.0, 1e-9);
    for (std::uint64_t s = 1; s <= full; ++s) {
      const Proposition set(s);
      const double b = bel(bf, set);
      const double p = pl(bf, set);
      EXPECT_LE(b, p + 1e-12);
      if (s != full) {
        EXPECT_NEAR(p, 1.0 - bel(bf, Proposition(complement_mask(bf, set))), 1e-12);
      }
      for (std::uint64_t t = s; t <= full; t = (t + 1) | s) {
        EXPECT_LE(b, bel(bf, Proposition(t)) + 1e-12);
        EXPECT_LE(p, pl(bf, Proposition(t)) + 1e-12);
        if (t == full) break;
      }
    }
  }
}

}  // namespace
}  // namespace aags
