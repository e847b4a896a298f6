#pragma once

#include "aags/env/environment.hpp"

namespace aags::env {

struct GridWorldConfig {
  int width = 50;
  int height = 50;
  double p_stay = 0.1;
  Cell start{0, 0};
  Cell goal{49, 49};
  double r_goal = 1.0;
  double sigma = 0.0;  // proximity scale; 0 means width / 5
  double gamma = 0.95;
  // Per-step proximity weight; negative means 1 - gamma, which caps the
  // value of lingering at distance d by r_goal * exp(-d / sigma).
  double shaping = -1.0;

  void validate() const;
};

// Four-connected grid. Each move succeeds with probability 1 - p_stay and
// otherwise leaves the agent in place; moves into the border are blocked.
// Entering the goal pays r_goal and ends the episode; any other cell pays
// shaping * r_goal * exp(-d(s', goal) / sigma).
class GridWorld final : public Environment {
 public:
  enum Move : std::uint32_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

  explicit GridWorld(GridWorldConfig config);

  std::string_view id() const override { return "grid"; }
  AmdpSpec spec() const override;
  bool is_goal(StateId s) const override { return decode(s) == config_.goal; }
  double start_goal_distance() const override { return euclidean(config_.start, config_.goal); }
  std::unique_ptr<Environment> clone() const override;

  std::size_t num_actions(StateId) const override { return 4; }
  Observation sample(StateId s, ActionId a, Rng& rng) const override;

  double reward(StateId next) const;
  StateId encode(Cell c) const;
  Cell decode(StateId s) const;
  const GridWorldConfig& config() const { return config_; }

 protected:
  StateId start_state() override { return encode(config_.start); }

 private:
  GridWorldConfig config_;
  double sigma_;
  double shaping_;
};

}  // namespace aags::env
