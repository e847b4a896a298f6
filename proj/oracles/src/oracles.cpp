#include "aags_oracles/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace aags::oracles {
namespace {

// Belief and plausibility of a bitmask straight from the focal list.
double bel_of(const BeliefFunction& bf, std::uint64_t mask) {
  double s = 0.0;
  for (const FocalElement& f : bf.focal()) {
    if ((f.set.mask() & ~mask) == 0) s += f.mass;
  }
  return s;
}

double pl_of(const BeliefFunction& bf, std::uint64_t mask) {
  double s = bf.boundary_mass();
  for (const FocalElement& f : bf.focal()) {
    if ((f.set.mask() & mask) != 0) s += f.mass;
  }
  return s;
}

}  // namespace

Expectation credal_grid(const BeliefFunction& bf, std::span<const double> values, double step) {
  const std::size_t n = bf.num_outcomes();
  if (n < 1 || n > 3) throw std::invalid_argument("credal_grid: needs 1 to 3 outcomes");
  if (values.size() != n) throw std::invalid_argument("credal_grid: one value per outcome");
  if (bf.boundary_mass() != 0.0) throw std::invalid_argument("credal_grid: boundary mass must be zero");
  constexpr double kSlack = 1e-12;
  double lo[3];
  double hi[3];
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = bel_of(bf, std::uint64_t{1} << i) - kSlack;
    hi[i] = pl_of(bf, std::uint64_t{1} << i) + kSlack;
  }
  const auto ticks = static_cast<long>(std::llround(1.0 / step));
  Expectation e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  auto visit = [&](const double* q) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (q[i] < lo[i] || q[i] > hi[i]) return;
      v += q[i] * values[i];
    }
    e.lower = std::min(e.lower, v);
    e.upper = std::max(e.upper, v);
  };
  if (n == 1) {
    const double q[1] = {1.0};
    visit(q);
  } else if (n == 2) {
    for (long a = 0; a <= ticks; ++a) {
      const double q0 = static_cast<double>(a) / static_cast<double>(ticks);
      const double q[2] = {q0, 1.0 - q0};
      visit(q);
    }
  } else {
    for (long a = 0; a <= ticks; ++a) {
      for (long b = 0; a + b <= ticks; ++b) {
        const double q0 = static_cast<double>(a) / static_cast<double>(ticks);
        const double q1 = static_cast<double>(b) / static_cast<double>(ticks);
        const double q[3] = {q0, q1, 1.0 - q0 - q1};
        visit(q);
      }
    }
  }
  if (!(e.lower <= e.upper)) throw std::runtime_error("credal_grid: no grid point inside the credal set");
  return e;
}

Expectation credal_vertices(const BeliefFunction& bf, std::span<const double> values, double lower_bound,
                            double upper_bound) {
  const std::size_t n = bf.num_outcomes();
  if (values.size() != n) throw std::invalid_argument("credal_vertices: one value per outcome");
  const std::size_t m = n + 2;
  if (m > 8) throw std::invalid_argument("credal_vertices: at most 6 outcomes");
  // Extended frame: outcomes 0..n-1, then the two bound points.
  std::vector<std::pair<std::uint64_t, double>> focal;
  for (const FocalElement& f : bf.focal()) focal.emplace_back(f.set.mask(), f.mass);
  if (bf.boundary_mass() > 0.0) focal.emplace_back((std::uint64_t{1} << m) - 1, bf.boundary_mass());
  std::vector<double> v(values.begin(), values.end());
  v.push_back(lower_bound);
  v.push_back(upper_bound);

  auto belief = [&](std::uint64_t mask) {
    double s = 0.0;
    for (const auto& [fm, mass] : focal) {
      if ((fm & ~mask) == 0) s += mass;
    }
    return s;
  };

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  Expectation e{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  do {
    std::uint64_t prefix = 0;
    double prev = 0.0;
    double value = 0.0;
    for (const std::size_t i : order) {
      prefix |= std::uint64_t{1} << i;
      const double b = belief(prefix);
      value += (b - prev) * v[i];
      prev = b;
    }
    e.lower = std::min(e.lower, value);
    e.upper = std::max(e.upper, value);
  } while (std::next_permutation(order.begin(), order.end()));
  return e;
}

double direct_sample_count(double epsilon, double delta) {
  const long double eps = epsilon;
  const long double del = delta;
  const long double numerator = std::log(1.0L / (1.25L * (1.0L - del) - 1.0L / 6.0L));
  const long double inner = -std::log(1.0L / (1.5L * (1.0L - eps) + 1.0L / 3.0L));
  return static_cast<double>(numerator / (eps * inner * inner));
}

double coverage(std::size_t outcomes, double samples, double epsilon, std::size_t repetitions,
                std::uint64_t seed) {
  if (outcomes < 1) throw std::invalid_argument("coverage: needs at least one outcome");
  const auto n = static_cast<std::size_t>(std::ceil(samples));
  std::mt19937_64 engine(seed);
  std::exponential_distribution<double> spacing(1.0);
  std::vector<double> probs(outcomes);
  std::vector<std::size_t> counts(outcomes);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < repetitions; ++r) {
    // Normalized exponentials are uniform on the simplex.
    double total = 0.0;
    for (double& p : probs) total += (p = spacing(engine));
    for (double& p : probs) p /= total;
    std::discrete_distribution<std::size_t> draw(probs.begin(), probs.end());
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t k = 0; k < n; ++k) ++counts[draw(engine)];
    bool inside = true;
    for (std::size_t i = 0; i < outcomes; ++i) {
      const double freq = static_cast<double>(counts[i]) / static_cast<double>(n);
      if (!(std::abs(freq - probs[i]) < epsilon)) inside = false;
    }
    hits += inside ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(repetitions);
}

std::vector<double> value_iteration(const TabularMdp& mdp, double tolerance) {
  const std::size_t n = mdp.transitions.size();
  std::vector<double> v(n, 0.0);
  std::vector<double> next(n, 0.0);
  for (int iter = 0; iter < 1000000; ++iter) {
    double change = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      const auto& actions = mdp.transitions[s];
      if (actions.empty()) {
        next[s] = 0.0;
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& outcomes : actions) {
        double q = 0.0;
        for (const Transition& t : outcomes) {
          q += t.probability * (t.reward + (t.terminal ? 0.0 : mdp.gamma * v[t.next]));
        }
        best = std::max(best, q);
      }
      next[s] = best;
      change = std::max(change, std::abs(next[s] - v[s]));
    }
    v.swap(next);
    if (change <= tolerance) return v;
  }
  throw std::runtime_error("value_iteration: no convergence");
}

TabularMdp chain_mdp(std::size_t length, double gamma) {
  TabularMdp mdp;
  mdp.gamma = gamma;
  mdp.transitions.resize(length);
  for (std::size_t s = 0; s + 1 < length; ++s) {
    const bool last = s + 2 == length;
    mdp.transitions[s] = {{{1.0, s + 1, last ? 1.0 : 0.0, last}}, {{1.0, 0, 0.0, false}}};
  }
  return mdp;
}

}  // namespace aags::oracles
