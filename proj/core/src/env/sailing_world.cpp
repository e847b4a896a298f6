#include "aags/env/sailing_world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aags::env {
namespace {

constexpr Cell kCompass[8] = {{0, 1}, {1, 1}, {1, 0}, {1, -1}, {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
constexpr int kTurn[3] = {0, -1, 1};

int wrap8(int h) { return ((h % 8) + 8) % 8; }

}  // namespace

void SailingWorldConfig::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("sailing dimensions must be positive");
  auto inside = [&](Cell c) { return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height; };
  if (!inside(start) || !inside(goal)) {
    throw std::invalid_argument("sailing start and goal must lie inside the map");
  }
  if (start == goal) throw std::invalid_argument("sailing start must differ from goal");
  if (!(p_wind_change >= 0.0 && p_wind_change <= 1.0)) {
    throw std::invalid_argument("p_wind_change must lie in [0, 1]");
  }
  if (initial_heading < 0 || initial_heading > 7) {
    throw std::invalid_argument("initial heading must lie in 0..7");
  }
  if (initial_wind < -1 || initial_wind > 7) throw std::invalid_argument("initial wind must lie in -1..7");
  if (w_progress < 0.0 || w_wind < 0.0 || w_border < 0.0) {
    throw std::invalid_argument("sailing reward weights must be >= 0");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
}

SailingWorld::SailingWorld(SailingWorldConfig config) : config_(config) {
  config_.validate();
  start_wind_ = config_.initial_wind < 0 ? 0 : config_.initial_wind;
}

std::unique_ptr<Environment> SailingWorld::clone() const {
  return std::make_unique<SailingWorld>(*this);
}

Cell SailingWorld::direction(int heading) { return kCompass[wrap8(heading)]; }

StateId SailingWorld::reset(std::uint64_t seed) {
  stream_.reseed(seed);
  start_wind_ = config_.initial_wind < 0 ? static_cast<int>(stream_.index(8)) : config_.initial_wind;
  return start_state();
}

StateId SailingWorld::start_state() {
  return encode({config_.start, config_.initial_heading, start_wind_});
}

std::uint64_t SailingWorld::state_space_size() const {
  return static_cast<std::uint64_t>(config_.width) * static_cast<std::uint64_t>(config_.height) * 64;
}

StateId SailingWorld::encode(const Pose& p) const {
  const std::uint64_t cell = static_cast<std::uint64_t>(p.cell.y) * static_cast<std::uint64_t>(config_.width) +
                             static_cast<std::uint64_t>(p.cell.x);
  return StateId{(cell * 8 + static_cast<std::uint64_t>(p.heading)) * 8 +
                 static_cast<std::uint64_t>(p.wind)};
}

SailingWorld::Pose SailingWorld::decode(StateId s) const {
  Pose p;
  p.wind = static_cast<int>(s.value % 8);
  p.heading = static_cast<int>((s.value / 8) % 8);
  const std::uint64_t cell = s.value / 64;
  const auto w = static_cast<std::uint64_t>(config_.width);
  p.cell = {static_cast<int>(cell % w), static_cast<int>(cell / w)};
  return p;
}

double SailingWorld::reward(const Pose& from, const Pose& to) const {
  const double progress = euclidean(from.cell, config_.goal) - euclidean(to.cell, config_.goal);
  const double angle = (to.heading - from.wind) * std::numbers::pi / 4.0;
  const double against = std::max(0.0, -std::cos(angle));
  const bool border = to.cell.x == 0 || to.cell.y == 0 || to.cell.x == config_.width - 1 ||
                      to.cell.y == config_.height - 1;
  const double r = config_.w_progress * progress - config_.w_wind * against -
                   (border ? config_.w_border : 0.0);
  return std::clamp(r, -1.0, 1.0);
}

Observation SailingWorld::sample(StateId s, ActionId a, Rng& rng) const {
  check_action(s, a);
  const Pose from = decode(s);
  Pose to = from;
  to.heading = wrap8(from.heading + kTurn[a.value]);
  const Cell step = kCompass[to.heading];
  const Cell moved{from.cell.x + step.x, from.cell.y + step.y};
  if (moved.x >= 0 && moved.y >= 0 && moved.x < config_.width && moved.y < config_.height) {
    to.cell = moved;
  }
  if (rng.bernoulli(config_.p_wind_change)) {
    to.wind = wrap8(from.wind + (rng.bernoulli(0.5) ? 1 : -1));
  }
  return {encode(to), reward(from, to), false};
}

}  // namespace aags::env
