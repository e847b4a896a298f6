#include "aags/env/grid_world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aags::env {
namespace {

bool inside(const GridWorldConfig& c, Cell p) {
  return p.x >= 0 && p.y >= 0 && p.x < c.width && p.y < c.height;
}

constexpr Cell kMoves[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};

}  // namespace

void GridWorldConfig::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (!(p_stay >= 0.0 && p_stay <= 1.0)) throw std::invalid_argument("p_stay must lie in [0, 1]");
  if (!inside(*this, start) || !inside(*this, goal)) {
    throw std::invalid_argument("grid start and goal must lie inside the grid");
  }
  if (start == goal) throw std::invalid_argument("grid start must differ from goal");
  if (!(r_goal > 0.0)) throw std::invalid_argument("grid r_goal must be positive");
  if (sigma < 0.0) throw std::invalid_argument("grid sigma must be >= 0");
  if (shaping > 1.0) throw std::invalid_argument("grid shaping must be <= 1");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
}

GridWorld::GridWorld(GridWorldConfig config) : config_(config) {
  config_.validate();
  sigma_ = config_.sigma > 0.0 ? config_.sigma : config_.width / 5.0;
  shaping_ = config_.shaping < 0.0 ? 1.0 - config_.gamma : config_.shaping;
}

AmdpSpec GridWorld::spec() const { return {config_.gamma, 0.0, config_.r_goal}; }

std::unique_ptr<Environment> GridWorld::clone() const { return std::make_unique<GridWorld>(*this); }

StateId GridWorld::encode(Cell c) const {
  return StateId{static_cast<std::uint64_t>(c.y) * static_cast<std::uint64_t>(config_.width) +
                 static_cast<std::uint64_t>(c.x)};
}

Cell GridWorld::decode(StateId s) const {
  const auto w = static_cast<std::uint64_t>(config_.width);
  return {static_cast<int>(s.value % w), static_cast<int>(s.value / w)};
}

double GridWorld::reward(StateId next) const {
  const Cell c = decode(next);
  if (c == config_.goal) return config_.r_goal;
  const double d = euclidean(c, config_.goal);
  return std::clamp(shaping_ * config_.r_goal * std::exp(-d / sigma_), 0.0, config_.r_goal);
}

Observation GridWorld::sample(StateId s, ActionId a, Rng& rng) const {
  check_action(s, a);
  Cell next = decode(s);
  if (!rng.bernoulli(config_.p_stay)) {
    const Cell moved{next.x + kMoves[a.value].x, next.y + kMoves[a.value].y};
    if (inside(config_, moved)) next = moved;
  }
  const StateId id = encode(next);
  return {id, reward(id), next == config_.goal};
}

}  // namespace aags::env
