#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace aags {

class InvalidProposition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kMassTolerance = 1e-9;

// Nonempty subset of a fixed, ordered outcome set, encoded as a bitmask over
// outcome indices. Index i is bit i.
class Proposition {
 public:
  static constexpr std::size_t kMaxOutcomes = 63;

  explicit Proposition(std::uint64_t mask);

  static Proposition singleton(std::size_t index);
  static Proposition of(std::initializer_list<std::size_t> indices);
  static Proposition full(std::size_t n);

  std::uint64_t mask() const { return mask_; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool contains(std::size_t index) const { return index < 64 && ((mask_ >> index) & 1U) != 0; }
  bool subset_of(const Proposition& other) const { return (mask_ & ~other.mask_) == 0; }
  bool intersects(const Proposition& other) const { return (mask_ & other.mask_) != 0; }
  // Highest member index + 1.
  std::size_t extent() const { return 64 - static_cast<std::size_t>(std::countl_zero(mask_)); }

  auto operator<=>(const Proposition&) const = default;

 private:
  std::uint64_t mask_;
};

struct FocalElement {
  Proposition set;
  double mass;
};

// Mass assignment over propositions of an n-outcome set plus an optional
// boundary proposition standing for {U, L} joined with every outcome, i.e. a
// superset of the whole outcome set whose extreme members are the value
// bounds supplied at evaluation time.
//
// Focal elements are stored canonically: duplicates merged, zero masses
// dropped, ordered by (size, mask).
class BeliefFunction {
 public:
  BeliefFunction(std::size_t num_outcomes, std::vector<FocalElement> focal,
                 double boundary_mass = 0.0);

  // All mass on the full outcome set.
  static BeliefFunction vacuous(std::size_t num_outcomes);

  std::size_t num_outcomes() const { return num_outcomes_; }
  std::span<const FocalElement> focal() const { return focal_; }
  double boundary_mass() const { return boundary_mass_; }

  // Mass of exactly this proposition (0 if not focal).
  double mass(const Proposition& set) const;
  double total_mass() const;

  // Same masses over n + 1 outcomes; the new outcome is only reachable
  // through the boundary proposition.
  BeliefFunction with_extra_outcome() const;

 private:
  std::size_t num_outcomes_;
  std::vector<FocalElement> focal_;
  double boundary_mass_;
};

// Belief: sum of m(C) over focal C contained in `set`. The boundary is a
// strict superset of every proposition and never contributes.
double bel(const BeliefFunction& bf, const Proposition& set);

// Plausibility: sum of m(C) over focal C meeting `set`, boundary included.
double pl(const BeliefFunction& bf, const Proposition& set);

// Shafer discounting: scale every mass by (1 - delta), add delta to the
// boundary proposition.
BeliefFunction discount(const BeliefFunction& bf, double delta);

// Outcomes of the bf's outcome set not in `set`; zero when `set` covers all.
std::uint64_t complement_mask(const BeliefFunction& bf, const Proposition& set);

}  // namespace aags
