#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "aags/belief_function.hpp"

// Brute-force reference computations used by the tests and the acceptance
// suite. They share no code paths with the library routines they check.
namespace aags::oracles {

struct Expectation {
  double lower;
  double upper;
};

// Min/max of sum q_i v_i over the grid points of the simplex (spacing
// `step`) with Bel({i}) <= q_i <= Pl({i}). For n <= 3 every proposition is a
// singleton or a singleton's complement, so these bounds describe the whole
// credal set. Requires a belief function without boundary mass.
Expectation credal_grid(const BeliefFunction& bf, std::span<const double> values, double step = 1e-3);

// Exact lower/upper expectation over the credal set's extreme points, which
// for a belief function are the marginal vectors of all outcome orderings.
// The boundary proposition is modelled as two extra outcomes valued at
// `lower_bound` and `upper_bound`. Up to 8 outcomes including those two.
Expectation credal_vertices(const BeliefFunction& bf, std::span<const double> values, double lower_bound,
                            double upper_bound);

// The sample-count relation evaluated directly in long double.
double direct_sample_count(double epsilon, double delta);

// Fraction of `repetitions` experiments in which every empirical frequency
// of ceil(samples) draws lies strictly within epsilon of its probability.
// Each repetition draws a fresh distribution over `outcomes` outcomes
// uniformly from the simplex.
double coverage(std::size_t outcomes, double samples, double epsilon, std::size_t repetitions,
                std::uint64_t seed);

struct Transition {
  double probability;
  std::size_t next;
  double reward;
  bool terminal;
};

// Explicit finite MDP: transitions[s][a] lists the outcomes of (s, a).
struct TabularMdp {
  std::vector<std::vector<std::vector<Transition>>> transitions;
  double gamma;
};

// Optimal state values by value iteration to the given sup-norm change.
std::vector<double> value_iteration(const TabularMdp& mdp, double tolerance = 1e-12);

// Deterministic chain 0 -> ... -> n-1; action 0 advances, action 1 returns
// to 0; entering n-1 pays 1 and terminates.
TabularMdp chain_mdp(std::size_t length, double gamma);

}  // namespace aags::oracles
