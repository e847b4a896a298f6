#include "aags/amdp.hpp"

#include <cmath>
#include <string>

namespace aags {

std::vector<ActionId> GenerativeModel::actions(StateId s) const {
  const std::size_t n = num_actions(s);
  std::vector<ActionId> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = ActionId{static_cast<std::uint32_t>(i)};
  return out;
}

void AmdpSpec::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(r_min <= r_max)) throw std::invalid_argument("reward bounds need r_min <= r_max");
}

void check_reward(const AmdpSpec& spec, double reward) {
  if (!(reward >= spec.r_min && reward <= spec.r_max)) {
    throw RewardOutOfBounds("reward " + std::to_string(reward) + " outside [" +
                            std::to_string(spec.r_min) + ", " + std::to_string(spec.r_max) +
                            "]; the environment's reward bounds are misconfigured");
  }
}

std::size_t EdgeStatistics::record(const Observation& obs) {
  const Outcome key{obs.next_state, obs.reward, obs.terminal};
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i] == key) {
      counts_.increment(i);
      return i;
    }
  }
  outcomes_.push_back(key);
  const std::size_t i = counts_.add_outcome();
  counts_.increment(i);
  return i;
}

Observation EdgeStatistics::sample(Rng& rng) const {
  if (counts_.empty()) throw std::logic_error("cannot sample an unvisited state-action pair");
  std::uint64_t draw = rng.index(counts_.total());
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (draw < counts_.count(i)) return outcomes_[i].observation();
    draw -= counts_.count(i);
  }
  return outcomes_.back().observation();
}

bool is_known(std::uint64_t visits, const ConfidenceSpec& spec) {
  if (visits == 0) return false;
  return static_cast<double>(visits) >= required_samples(spec);
}

void EmpiricalModel::record_observation(StateId s, ActionId a, const Observation& obs) {
  check_reward(spec_, obs.reward);
  edges_[{s, a}].record(obs);
}

Observation EmpiricalModel::sample_empirical(StateId s, ActionId a, Rng& rng) const {
  const EdgeStatistics* edge = find(s, a);
  if (edge == nullptr) throw std::logic_error("cannot sample an unvisited state-action pair");
  return edge->sample(rng);
}

bool EmpiricalModel::is_known(StateId s, ActionId a, const ConfidenceSpec& confidence) const {
  return aags::is_known(visits(s, a), confidence);
}

std::uint64_t EmpiricalModel::visits(StateId s, ActionId a) const {
  const EdgeStatistics* edge = find(s, a);
  return edge == nullptr ? 0 : edge->visits();
}

const EdgeStatistics* EmpiricalModel::find(StateId s, ActionId a) const {
  const auto it = edges_.find({s, a});
  return it == edges_.end() ? nullptr : &it->second;
}

}  // namespace aags
