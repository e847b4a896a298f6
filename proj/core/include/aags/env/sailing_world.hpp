#pragma once

#include "aags/env/environment.hpp"

namespace aags::env {

struct SailingWorldConfig {
  int width = 40;
  int height = 40;
  double p_wind_change = 0.1;
  Cell start{0, 0};
  Cell goal{39, 39};
  int initial_heading = 0;  // 0..7 clockwise from north
  int initial_wind = -1;    // 0..7, or -1 to draw from the reset seed
  double w_progress = 1.0;
  double w_wind = 0.2;
  double w_border = 0.5;
  double gamma = 0.95;

  void validate() const;
};

// State (x, y, heading, wind) over 8 compass directions. Actions keep the
// heading or turn it by -45/+45 degrees, then advance one cell along the new
// heading (blocked at the border). The wind steps to an adjacent compass
// direction with probability p_wind_change.
//
// r = w_progress (d(s, goal) - d(s', goal))
//     - w_wind max(0, -cos(heading' - wind))
//     - w_border [s' on the outermost ring]
// clipped to [-1, 1]. The goal cell is not terminal for planning, since the
// boat cannot stop; episodes end when it is reached.
class SailingWorld final : public Environment {
 public:
  enum Turn : std::uint32_t { kForward = 0, kPort = 1, kStarboard = 2 };

  struct Pose {
    Cell cell;
    int heading = 0;
    int wind = 0;
    bool operator==(const Pose&) const = default;
  };

  explicit SailingWorld(SailingWorldConfig config);

  std::string_view id() const override { return "sailing"; }
  AmdpSpec spec() const override { return {config_.gamma, -1.0, 1.0}; }
  bool is_goal(StateId s) const override { return decode(s).cell == config_.goal; }
  double start_goal_distance() const override { return euclidean(config_.start, config_.goal); }
  std::unique_ptr<Environment> clone() const override;
  StateId reset(std::uint64_t seed) override;

  std::size_t num_actions(StateId) const override { return 3; }
  Observation sample(StateId s, ActionId a, Rng& rng) const override;

  double reward(const Pose& from, const Pose& to) const;
  StateId encode(const Pose& p) const;
  Pose decode(StateId s) const;
  std::uint64_t state_space_size() const;
  const SailingWorldConfig& config() const { return config_; }

  static Cell direction(int heading);

 protected:
  StateId start_state() override;

 private:
  SailingWorldConfig config_;
  int start_wind_ = 0;
};

}  // namespace aags::env
