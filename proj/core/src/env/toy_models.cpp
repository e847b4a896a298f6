#include "aags/env/toy_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aags::env {

void BanditConfig::validate() const {
  if (arms.empty()) throw std::invalid_argument("bandit needs at least one arm");
  for (const auto& arm : arms) {
    if (arm.empty()) throw std::invalid_argument("bandit arms need at least one branch");
    double total = 0.0;
    for (const Branch& b : arm) {
      if (!(b.probability >= 0.0)) throw std::invalid_argument("bandit probabilities must be >= 0");
      total += b.probability;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("bandit arm probabilities must sum to 1");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
}

Bandit::Bandit(BanditConfig config) : config_(std::move(config)) { config_.validate(); }

AmdpSpec Bandit::spec() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& arm : config_.arms) {
    for (const auto& b : arm) {
      lo = std::min(lo, b.reward);
      hi = std::max(hi, b.reward);
    }
  }
  return {config_.gamma, std::min(lo, 0.0), std::max(hi, 0.0)};
}

std::unique_ptr<Environment> Bandit::clone() const { return std::make_unique<Bandit>(*this); }

std::size_t Bandit::num_actions(StateId s) const {
  return s.value == 0 ? config_.arms.size() : 0;
}

Observation Bandit::sample(StateId s, ActionId a, Rng& rng) const {
  check_action(s, a);
  const auto& arm = config_.arms[a.value];
  double u = arm.size() == 1 ? 0.0 : rng.uniform();
  for (const auto& b : arm) {
    if (u < b.probability) return {StateId{1}, b.reward, true};
    u -= b.probability;
  }
  return {StateId{1}, arm.back().reward, true};
}

void ChainConfig::validate() const {
  if (length < 2) throw std::invalid_argument("chain needs at least two states");
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
}

Chain::Chain(ChainConfig config) : config_(config) { config_.validate(); }

std::unique_ptr<Environment> Chain::clone() const { return std::make_unique<Chain>(*this); }

std::size_t Chain::num_actions(StateId s) const {
  return is_goal(s) ? 0 : 2;
}

Observation Chain::sample(StateId s, ActionId a, Rng&) const {
  check_action(s, a);
  if (a.value == kRestart) return {StateId{0}, 0.0, false};
  const StateId next{s.value + 1};
  const bool last = is_goal(next);
  return {next, last ? 1.0 : 0.0, last};
}

}  // namespace aags::env
