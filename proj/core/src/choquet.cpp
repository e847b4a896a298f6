#include "aags/choquet.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace aags {
namespace {

void check_inputs(const BeliefFunction& bf, std::span<const double> values,
                  const ValueBounds& bounds) {
  if (values.size() != bf.num_outcomes()) {
    throw std::invalid_argument("expected a value for each of the " +
                                std::to_string(bf.num_outcomes()) + " outcomes, got " +
                                std::to_string(values.size()));
  }
  if (!(bounds.lower <= bounds.upper)) throw std::invalid_argument("value bounds need L <= U");
}

template <typename Pick>
double extreme_over(std::uint64_t mask, std::span<const double> values, double init, Pick pick) {
  double best = init;
  while (mask != 0) {
    const int i = std::countr_zero(mask);
    best = pick(best, values[static_cast<std::size_t>(i)]);
    mask &= mask - 1;
  }
  return best;
}

}  // namespace

double choquet_lower(const BeliefFunction& bf, std::span<const double> values,
                     const ValueBounds& bounds) {
  check_inputs(bf, values, bounds);
  double total = 0.0;
  for (const FocalElement& f : bf.focal()) {
    const double v = extreme_over(f.set.mask(), values, std::numeric_limits<double>::infinity(),
                                  [](double a, double b) { return std::min(a, b); });
    total += f.mass * v;
  }
  return total + bf.boundary_mass() * bounds.lower;
}

double choquet_upper(const BeliefFunction& bf, std::span<const double> values,
                     const ValueBounds& bounds) {
  check_inputs(bf, values, bounds);
  double total = 0.0;
  for (const FocalElement& f : bf.focal()) {
    const double v = extreme_over(f.set.mask(), values, -std::numeric_limits<double>::infinity(),
                                  [](double a, double b) { return std::max(a, b); });
    total += f.mass * v;
  }
  return total + bf.boundary_mass() * bounds.upper;
}

}  // namespace aags
