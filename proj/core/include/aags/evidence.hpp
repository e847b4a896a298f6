#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "aags/belief_function.hpp"
#include "aags/sample_complexity.hpp"

namespace aags {

// Outcome-count cap beyond which outcomes are binned before the mass solve.
inline constexpr std::size_t kMaxSolvedOutcomes = 12;
inline constexpr double kFeasibilityTolerance = 1e-6;

// Counts over an ordered list of atomic outcomes (index = canonical order).
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;
  explicit EmpiricalDistribution(std::vector<std::uint64_t> counts);

  std::size_t size() const { return counts_.size(); }
  bool empty() const { return total_ == 0; }
  std::uint64_t total() const { return total_; }
  std::uint64_t count(std::size_t i) const { return counts_[i]; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  double frequency(std::size_t i) const {
    return static_cast<double>(counts_[i]) / static_cast<double>(total_);
  }

  // Appends a new outcome with zero count and returns its index.
  std::size_t add_outcome();
  void increment(std::size_t i, std::uint64_t by = 1);

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct ValueBounds {
  double lower;
  double upper;
};

struct IntervalBounds {
  std::vector<double> bel;
  std::vector<double> pl;
};

// Bel(w) = max(p_w - eps, 0), Pl(w) = min(p_w + eps, 1).
IntervalBounds interval_bounds(const EmpiricalDistribution& p, double epsilon);

// Indicator system over the compound propositions of an n-outcome set:
// rows are the n singletons plus a total-mass row of ones, columns are every
// proposition with at least two members (the full set included), ordered by
// increasing bitmask. The system is underdetermined for n >= 3, so it is
// solved in the minimum-norm least-squares sense through its precomputed
// Moore-Penrose pseudo-inverse.
class MassSystem {
 public:
  explicit MassSystem(std::size_t n);

  std::size_t outcomes() const { return n_; }
  std::size_t columns() const { return masks_.size(); }
  std::span<const std::uint64_t> column_masks() const { return masks_; }
  const Eigen::MatrixXd& matrix() const { return a_; }
  const Eigen::MatrixXd& pseudo_inverse() const { return pinv_; }

  Eigen::VectorXd min_norm_solve(const Eigen::VectorXd& rhs) const { return pinv_ * rhs; }

 private:
  std::size_t n_;
  std::vector<std::uint64_t> masks_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd pinv_;
};

// Shared read-only system for 2 <= n <= 12, built on first use.
const MassSystem& assemble_system(std::size_t n);

struct CompoundSolution {
  std::vector<double> masses;  // one per column of the system
  double residual = 0.0;       // max |A x - B| of the raw min-norm solution
  bool projected = false;      // nonnegativity / total-mass repair fired
};

// Min-norm solve followed by the repair step: negatives are clamped to zero
// and the total-mass row is restored through the full-set column, falling
// back to proportional rescaling of all compound masses when the full set
// alone cannot absorb the correction. If that rescaling pushes a singleton
// row above its right-hand side, the min-norm solution is instead projected
// onto the feasible set.
CompoundSolution solve_compound_masses(const MassSystem& system, std::span<const double> rhs);

struct MassAssignment {
  BeliefFunction belief;  // discounted by delta
  double epsilon;
  bool projected;
  double residual;
};

// Confidence-interval-to-belief conversion with accuracy derived from
// (delta, N) through the sample-complexity relation.
MassAssignment dist2belief(const EmpiricalDistribution& p, double delta);

// Same with the accuracy supplied directly (delta may be 0 here).
MassAssignment dist2belief_with_accuracy(const EmpiricalDistribution& p, double epsilon,
                                         double delta);

// Outcomes merged for the solve. groups[k] lists the original outcome indices
// backing atom k of `dist`.
struct BinnedDistribution {
  EmpiricalDistribution dist;
  std::vector<std::vector<std::size_t>> groups;
  bool merged = false;
};

// Identity when the support fits under `cap`; otherwise the lowest-count
// outcomes (ties by canonical order) are merged into one composite outcome,
// appended last, so that exactly `cap` atoms remain.
BinnedDistribution bin_outcomes(const EmpiricalDistribution& p,
                                std::size_t cap = kMaxSolvedOutcomes);

}  // namespace aags
