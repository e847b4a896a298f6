#pragma once

#include <vector>

#include "aags/env/environment.hpp"

namespace aags::env {

// One-shot bandit: state 0 is the start, every arm ends the episode in
// state 1 (which counts as the goal).
struct BanditConfig {
  struct Branch {
    double probability;
    double reward;
  };
  std::vector<std::vector<Branch>> arms{{{1.0, 0.0}}, {{1.0, 1.0}}};
  double gamma = 0.95;

  void validate() const;
};

class Bandit final : public Environment {
 public:
  explicit Bandit(BanditConfig config);

  std::string_view id() const override { return "bandit"; }
  AmdpSpec spec() const override;
  bool is_goal(StateId s) const override { return s.value == 1; }
  double start_goal_distance() const override { return 1.0; }
  std::unique_ptr<Environment> clone() const override;

  std::size_t num_actions(StateId s) const override;
  Observation sample(StateId s, ActionId a, Rng& rng) const override;

 protected:
  StateId start_state() override { return StateId{0}; }

 private:
  BanditConfig config_;
};

// Deterministic chain 0 -> 1 -> ... -> n-1. Action 0 advances, action 1
// returns to state 0. Entering the last state pays 1 and ends the episode;
// every other transition pays 0.
struct ChainConfig {
  int length = 5;
  double gamma = 0.9;

  void validate() const;
};

class Chain final : public Environment {
 public:
  enum Move : std::uint32_t { kAdvance = 0, kRestart = 1 };

  explicit Chain(ChainConfig config);

  std::string_view id() const override { return "chain"; }
  AmdpSpec spec() const override { return {config_.gamma, 0.0, 1.0}; }
  bool is_goal(StateId s) const override {
    return s.value == static_cast<std::uint64_t>(config_.length - 1);
  }
  double start_goal_distance() const override { return config_.length - 1; }
  std::unique_ptr<Environment> clone() const override;

  std::size_t num_actions(StateId s) const override;
  Observation sample(StateId s, ActionId a, Rng& rng) const override;

 protected:
  StateId start_state() override { return StateId{0}; }

 private:
  ChainConfig config_;
};

}  // namespace aags::env
