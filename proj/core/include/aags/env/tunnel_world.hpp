#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "aags/env/environment.hpp"

namespace aags::env {

// Occupancy map, one row per line: '#' wall, '.' free, 's' start,
// 'g' large goal, 'r' small-reward cell. Row 0 is the top line.
struct TunnelLayout {
  int width = 0;
  int height = 0;
  std::vector<std::string> rows;
  Cell start;
  Cell goal;

  static TunnelLayout parse(std::string_view text);
  char at(Cell c) const { return rows[static_cast<std::size_t>(c.y)][static_cast<std::size_t>(c.x)]; }
  bool free(Cell c) const;
  std::string to_string() const;
};

// Straight corridor of the given width. A small-reward pocket sits at the
// closed west end, two cells behind the start; the large goal is `distance`
// cells east of the start on the same row.
TunnelLayout make_tunnel_layout(int distance, int corridor_width = 3);

struct TunnelWorldConfig {
  TunnelLayout layout = make_tunnel_layout(20);
  double r_small = 0.05;
  double r_large = 1.0;
  double gamma = 0.9;

  void validate() const;
};

// Deterministic four-connected moves blocked by walls. Entering an 'r' cell
// pays r_small; entering the goal pays r_large. The goal absorbs and keeps
// paying r_large rather than being terminal, so optimistic bounds are not
// pulled away from it; episodes end when it is reached.
class TunnelWorld final : public Environment {
 public:
  explicit TunnelWorld(TunnelWorldConfig config);

  std::string_view id() const override { return "tunnel"; }
  AmdpSpec spec() const override { return {config_.gamma, 0.0, config_.r_large}; }
  bool is_goal(StateId s) const override { return decode(s) == config_.layout.goal; }
  double start_goal_distance() const override {
    return euclidean(config_.layout.start, config_.layout.goal);
  }
  std::unique_ptr<Environment> clone() const override;

  std::size_t num_actions(StateId) const override { return 4; }
  Observation sample(StateId s, ActionId a, Rng& rng) const override;

  StateId encode(Cell c) const;
  Cell decode(StateId s) const;
  const TunnelWorldConfig& config() const { return config_; }

 protected:
  StateId start_state() override { return encode(config_.layout.start); }

 private:
  TunnelWorldConfig config_;
};

}  // namespace aags::env
