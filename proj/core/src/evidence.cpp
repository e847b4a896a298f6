#include "aags/evidence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

namespace aags {

EmpiricalDistribution::EmpiricalDistribution(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)) {
  total_ = std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::size_t EmpiricalDistribution::add_outcome() {
  counts_.push_back(0);
  return counts_.size() - 1;
}

void EmpiricalDistribution::increment(std::size_t i, std::uint64_t by) {
  counts_.at(i) += by;
  total_ += by;
}

IntervalBounds interval_bounds(const EmpiricalDistribution& p, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  if (p.empty()) throw std::invalid_argument("interval bounds need at least one sample");
  IntervalBounds out;
  out.bel.resize(p.size());
  out.pl.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double f = p.frequency(i);
    out.bel[i] = std::max(f - epsilon, 0.0);
    out.pl[i] = std::min(f + epsilon, 1.0);
  }
  return out;
}

MassSystem::MassSystem(std::size_t n) : n_(n) {
  if (n < 2 || n > kMaxSolvedOutcomes) {
    throw std::invalid_argument("mass system supports 2..12 outcomes, got " + std::to_string(n) +
                                "; bin outcomes first");
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    if (std::popcount(mask) >= 2) masks_.push_back(mask);
  }
  a_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1),
                             static_cast<Eigen::Index>(masks_.size()));
  for (std::size_t j = 0; j < masks_.size(); ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((masks_[j] >> i) & 1U) a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    }
    a_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) = 1.0;
  }
  pinv_ = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(a_).pseudoInverse();
}

const MassSystem& assemble_system(std::size_t n) {
  if (n < 2 || n > kMaxSolvedOutcomes) {
    throw std::invalid_argument("mass system supports 2..12 outcomes, got " + std::to_string(n) +
                                "; bin outcomes first");
  }
  static std::array<std::once_flag, kMaxSolvedOutcomes + 1> once;
  static std::array<std::unique_ptr<MassSystem>, kMaxSolvedOutcomes + 1> systems;
  std::call_once(once[n], [n] { systems[n] = std::make_unique<MassSystem>(n); });
  return *systems[n];
}

namespace {

// Dykstra's alternating projections onto the nonnegative orthant, the
// total-mass hyperplane and one halfspace per singleton row.
Eigen::VectorXd project_feasible(const MassSystem& system, const Eigen::VectorXd& start, const Eigen::VectorXd& b,
                                 double target) {
  const Eigen::MatrixXd& a = system.matrix();
  const auto n = static_cast<Eigen::Index>(system.outcomes());
  const Eigen::Index m = a.cols();
  const Eigen::Index sets = n + 2;
  std::vector<Eigen::VectorXd> corr(static_cast<std::size_t>(sets), Eigen::VectorXd::Zero(m));
  Eigen::VectorXd x = start;
  constexpr int kMaxSweeps = 200000;
  constexpr double kTol = 1e-13;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Eigen::VectorXd before = x;
    for (Eigen::Index k = 0; k < sets; ++k) {
      Eigen::VectorXd& c = corr[static_cast<std::size_t>(k)];
      const Eigen::VectorXd y = x + c;
      if (k == 0) {
        x = y.cwiseMax(0.0);
      } else if (k == 1) {
        x = y.array() + (target - y.sum()) / static_cast<double>(m);
      } else {
        const auto row = a.row(k - 2);
        const double over = row.dot(y) - b(k - 2);
        x = over > 0.0 ? Eigen::VectorXd(y - (over / row.squaredNorm()) * row.transpose()) : y;
      }
      c = y - x;
    }
    if ((x - before).cwiseAbs().maxCoeff() < kTol) break;
  }
  x = x.cwiseMax(0.0);
  return x;
}

}  // namespace

CompoundSolution solve_compound_masses(const MassSystem& system, std::span<const double> rhs) {
  const auto rows = static_cast<Eigen::Index>(system.outcomes() + 1);
  if (static_cast<Eigen::Index>(rhs.size()) != rows) {
    throw std::invalid_argument("right-hand side must have n + 1 entries");
  }
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(rhs.data(), rows);
  const Eigen::VectorXd x = system.min_norm_solve(b);

  CompoundSolution out;
  out.residual = (system.matrix() * x - b).cwiseAbs().maxCoeff();
  out.masses.assign(x.data(), x.data() + x.size());

  for (double& m : out.masses) {
    if (m < 0.0) {
      if (m < -1e-12) out.projected = true;
      m = 0.0;
    }
  }
  const double target = std::max(b(rows - 1), 0.0);
  const double sum = std::accumulate(out.masses.begin(), out.masses.end(), 0.0);
  const double surplus = sum - target;
  if (std::abs(surplus) > 1e-12) out.projected = true;

  // The full set has the largest mask, hence the last column.
  double& full = out.masses.back();
  if (full - surplus >= 0.0) {
    full -= surplus;
  } else if (sum > 0.0) {
    const double scale = target / sum;
    for (double& m : out.masses) m *= scale;
  } else {
    full = target;
  }

  // Rescaling can lift a singleton row above its right-hand side. Fall back
  // to the Euclidean projection of the min-norm solution onto
  // {x >= 0, sum x = target, row_i(x) <= rhs_i}.
  const Eigen::VectorXd repaired = Eigen::Map<const Eigen::VectorXd>(out.masses.data(), x.size());
  const Eigen::VectorXd rows_now = system.matrix().topRows(rows - 1) * repaired;
  if ((rows_now - b.head(rows - 1)).maxCoeff() > 1e-9) {
    const Eigen::VectorXd p = project_feasible(system, x, b, target);
    const bool feasible = (system.matrix().topRows(rows - 1) * p - b.head(rows - 1)).maxCoeff() <= 1e-9 &&
                          std::abs(p.sum() - target) <= 1e-10;
    // An infeasible system keeps the rescaled repair.
    if (feasible) out.masses.assign(p.data(), p.data() + p.size());
  }
  return out;
}

MassAssignment dist2belief_with_accuracy(const EmpiricalDistribution& p, double epsilon,
                                         double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
  const std::size_t n = p.size();
  if (n > kMaxSolvedOutcomes) {
    throw std::invalid_argument("dist2belief supports at most 12 outcomes; bin outcomes first");
  }
  const IntervalBounds bounds = interval_bounds(p, epsilon);
  const double keep = 1.0 - delta;

  std::vector<FocalElement> focal;
  double bel_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    bel_sum += bounds.bel[i];
    focal.push_back({Proposition::singleton(i), keep * bounds.bel[i]});
  }

  bool projected = false;
  double residual = 0.0;
  if (n == 1) {
    // No compound propositions exist; the total-mass row sends the residual
    // 1 - Bel to the full set, which is the lone outcome itself.
    focal.push_back({Proposition::full(1), keep * (1.0 - bel_sum)});
  } else {
    const MassSystem& system = assemble_system(n);
    std::vector<double> rhs(n + 1);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = bounds.pl[i] - bounds.bel[i];
    rhs[n] = 1.0 - bel_sum;
    CompoundSolution solution = solve_compound_masses(system, rhs);
    projected = solution.projected;
    residual = solution.residual;
    const auto masks = system.column_masks();
    for (std::size_t j = 0; j < masks.size(); ++j) {
      if (solution.masses[j] > 0.0) {
        focal.push_back({Proposition(masks[j]), keep * solution.masses[j]});
      }
    }
  }
  return {BeliefFunction(n, std::move(focal), delta), epsilon, projected, residual};
}

MassAssignment dist2belief(const EmpiricalDistribution& p, double delta) {
  if (p.empty()) throw std::invalid_argument("dist2belief needs at least one sample");
  return dist2belief_with_accuracy(p, accuracy_for(delta, p.total()), delta);
}

BinnedDistribution bin_outcomes(const EmpiricalDistribution& p, std::size_t cap) {
  if (cap < 2) throw std::invalid_argument("binning cap must be at least 2");
  BinnedDistribution out;
  const std::size_t n = p.size();
  if (n <= cap) {
    out.dist = p;
    out.groups.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.groups[i] = {i};
    return out;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.count(a) < p.count(b); });
  const std::size_t merge_count = n - cap + 1;
  std::vector<bool> merged(n, false);
  std::vector<std::size_t> composite(order.begin(), order.begin() + static_cast<long>(merge_count));
  std::sort(composite.begin(), composite.end());
  for (const std::size_t i : composite) merged[i] = true;

  std::vector<std::uint64_t> counts;
  std::uint64_t composite_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (merged[i]) {
      composite_count += p.count(i);
    } else {
      counts.push_back(p.count(i));
      out.groups.push_back({i});
    }
  }
  counts.push_back(composite_count);
  out.groups.push_back(std::move(composite));
  out.dist = EmpiricalDistribution(std::move(counts));
  out.merged = true;
  return out;
}

}  // namespace aags
