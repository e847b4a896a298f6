#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "aags/evidence.hpp"
#include "aags/random.hpp"
#include "aags/sample_complexity.hpp"

namespace aags {

// Opaque state identifier; environments pack their states into 64 bits.
struct StateId {
  std::uint64_t value = 0;
  auto operator<=>(const StateId&) const = default;
};

// Actions of a state are the indices 0..num_actions(s)-1.
struct ActionId {
  std::uint32_t value = 0;
  auto operator<=>(const ActionId&) const = default;
};

struct Observation {
  StateId next_state;
  double reward = 0.0;
  bool terminal = false;
};

// Blackbox simulator. Must accept any reachable (s, a), not only the state
// the real system is in.
class GenerativeModel {
 public:
  virtual ~GenerativeModel() = default;
  virtual std::size_t num_actions(StateId s) const = 0;
  virtual Observation sample(StateId s, ActionId a, Rng& rng) const = 0;

  std::vector<ActionId> actions(StateId s) const;
};

struct AmdpSpec {
  double gamma = 0.95;
  double r_min = 0.0;
  double r_max = 1.0;

  double v_min() const { return r_min / (1.0 - gamma); }
  double v_max() const { return r_max / (1.0 - gamma); }
  ValueBounds value_bounds() const { return {v_min(), v_max()}; }
  void validate() const;
};

// Outcome identity is the exact (next state, reward, terminal) triple.
struct Outcome {
  StateId next_state;
  double reward = 0.0;
  bool terminal = false;

  bool operator==(const Outcome&) const = default;
  Observation observation() const { return {next_state, reward, terminal}; }
};

class RewardOutOfBounds : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Sampled transition model of one (s, a) pair.
class EdgeStatistics {
 public:
  // Returns the outcome index the observation was counted under.
  std::size_t record(const Observation& obs);

  std::uint64_t visits() const { return counts_.total(); }
  std::size_t support() const { return outcomes_.size(); }
  const Outcome& outcome(std::size_t i) const { return outcomes_[i]; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const EmpiricalDistribution& counts() const { return counts_; }

  // Draws an outcome with probability count / N. Throws if unvisited.
  Observation sample(Rng& rng) const;

 private:
  std::vector<Outcome> outcomes_;
  EmpiricalDistribution counts_;
};

// True iff the pair has at least required_samples(eps, delta) observations.
bool is_known(std::uint64_t visits, const ConfidenceSpec& spec);

struct StateAction {
  StateId state;
  ActionId action;
  bool operator==(const StateAction&) const = default;
};

}  // namespace aags

template <>
struct std::hash<aags::StateId> {
  std::size_t operator()(const aags::StateId& s) const noexcept {
    return static_cast<std::size_t>(aags::splitmix64(s.value));
  }
};

template <>
struct std::hash<aags::StateAction> {
  std::size_t operator()(const aags::StateAction& sa) const noexcept {
    return static_cast<std::size_t>(aags::hash_combine(sa.state.value, sa.action.value));
  }
};

namespace aags {

// Empirical transition models for every visited (s, a) pair.
class EmpiricalModel {
 public:
  explicit EmpiricalModel(AmdpSpec spec) : spec_(spec) { spec_.validate(); }

  // Throws RewardOutOfBounds when the reward leaves [r_min, r_max].
  void record_observation(StateId s, ActionId a, const Observation& obs);
  Observation sample_empirical(StateId s, ActionId a, Rng& rng) const;
  bool is_known(StateId s, ActionId a, const ConfidenceSpec& confidence) const;

  std::uint64_t visits(StateId s, ActionId a) const;
  const EdgeStatistics* find(StateId s, ActionId a) const;
  const AmdpSpec& spec() const { return spec_; }

 private:
  AmdpSpec spec_;
  std::unordered_map<StateAction, EdgeStatistics> edges_;
};

void check_reward(const AmdpSpec& spec, double reward);

}  // namespace aags
