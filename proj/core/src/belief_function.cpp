#include "aags/belief_function.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace aags {
namespace {

std::uint64_t full_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_within(const BeliefFunction& bf, const Proposition& set) {
  if ((set.mask() & ~full_mask(bf.num_outcomes())) != 0) {
    throw InvalidProposition("proposition references outcome index " +
                             std::to_string(set.extent() - 1) + " but the outcome set has " +
                             std::to_string(bf.num_outcomes()) + " outcomes");
  }
}

}  // namespace

Proposition::Proposition(std::uint64_t mask) : mask_(mask) {
  if (mask_ == 0) throw InvalidProposition("propositions must be nonempty");
  if (extent() > kMaxOutcomes) throw InvalidProposition("proposition exceeds 63 outcomes");
}

Proposition Proposition::singleton(std::size_t index) {
  if (index >= kMaxOutcomes) throw InvalidProposition("outcome index out of range");
  return Proposition(std::uint64_t{1} << index);
}

Proposition Proposition::of(std::initializer_list<std::size_t> indices) {
  std::uint64_t mask = 0;
  for (const std::size_t i : indices) {
    if (i >= kMaxOutcomes) throw InvalidProposition("outcome index out of range");
    mask |= std::uint64_t{1} << i;
  }
  return Proposition(mask);
}

Proposition Proposition::full(std::size_t n) {
  if (n == 0 || n > kMaxOutcomes) throw InvalidProposition("outcome set size out of range");
  return Proposition(full_mask(n));
}

BeliefFunction::BeliefFunction(std::size_t num_outcomes, std::vector<FocalElement> focal,
                               double boundary_mass)
    : num_outcomes_(num_outcomes), boundary_mass_(boundary_mass) {
  if (num_outcomes_ == 0 || num_outcomes_ > Proposition::kMaxOutcomes) {
    throw std::invalid_argument("belief function needs between 1 and 63 outcomes");
  }
  if (!(boundary_mass_ >= 0.0 && boundary_mass_ <= 1.0)) {
    throw std::invalid_argument("boundary mass must lie in [0, 1]");
  }
  std::sort(focal.begin(), focal.end(), [](const FocalElement& a, const FocalElement& b) {
    const auto sa = a.set.size();
    const auto sb = b.set.size();
    return sa != sb ? sa < sb : a.set.mask() < b.set.mask();
  });
  focal_.reserve(focal.size());
  for (const FocalElement& f : focal) {
    check_within(*this, f.set);
    if (!(f.mass >= 0.0 && f.mass <= 1.0)) {
      throw std::invalid_argument("focal masses must lie in [0, 1], got " + std::to_string(f.mass));
    }
    if (f.mass == 0.0) continue;
    if (!focal_.empty() && focal_.back().set == f.set) {
      focal_.back().mass += f.mass;
    } else {
      focal_.push_back(f);
    }
  }
  if (std::abs(total_mass() - 1.0) > kMassTolerance) {
    throw std::invalid_argument("belief function masses must sum to 1, got " +
                                std::to_string(total_mass()));
  }
}

BeliefFunction BeliefFunction::vacuous(std::size_t num_outcomes) {
  return BeliefFunction(num_outcomes, {{Proposition::full(num_outcomes), 1.0}});
}

double BeliefFunction::mass(const Proposition& set) const {
  for (const FocalElement& f : focal_) {
    if (f.set == set) return f.mass;
  }
  return 0.0;
}

double BeliefFunction::total_mass() const {
  double total = boundary_mass_;
  for (const FocalElement& f : focal_) total += f.mass;
  return total;
}

BeliefFunction BeliefFunction::with_extra_outcome() const {
  BeliefFunction copy = *this;
  if (copy.num_outcomes_ + 1 > Proposition::kMaxOutcomes) {
    throw std::invalid_argument("belief function needs between 1 and 63 outcomes");
  }
  ++copy.num_outcomes_;
  return copy;
}

double bel(const BeliefFunction& bf, const Proposition& set) {
  check_within(bf, set);
  double total = 0.0;
  for (const FocalElement& f : bf.focal()) {
    if (f.set.subset_of(set)) total += f.mass;
  }
  return total;
}

double pl(const BeliefFunction& bf, const Proposition& set) {
  check_within(bf, set);
  double total = bf.boundary_mass();
  for (const FocalElement& f : bf.focal()) {
    if (f.set.intersects(set)) total += f.mass;
  }
  return total;
}

BeliefFunction discount(const BeliefFunction& bf, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in [0, 1]");
  std::vector<FocalElement> focal(bf.focal().begin(), bf.focal().end());
  for (FocalElement& f : focal) f.mass *= 1.0 - delta;
  return BeliefFunction(bf.num_outcomes(), std::move(focal),
                        bf.boundary_mass() * (1.0 - delta) + delta);
}

std::uint64_t complement_mask(const BeliefFunction& bf, const Proposition& set) {
  check_within(bf, set);
  return full_mask(bf.num_outcomes()) & ~set.mask();
}

}  // namespace aags
