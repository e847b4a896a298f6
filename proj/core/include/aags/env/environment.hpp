#pragma once

#include <cstdint>
#include <memory>
#include <string_view>

#include "aags/amdp.hpp"
#include "aags/random.hpp"

namespace aags::env {

struct Cell {
  int x = 0;
  int y = 0;
  bool operator==(const Cell&) const = default;
};

double euclidean(const Cell& a, const Cell& b);

// A benchmark world: a generative model usable at arbitrary (s, a) plus its
// own seeded stream for executing the real episode.
class Environment : public GenerativeModel {
 public:
  virtual std::string_view id() const = 0;
  virtual AmdpSpec spec() const = 0;
  virtual bool is_goal(StateId s) const = 0;
  virtual double start_goal_distance() const = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  // Reseeds the execution stream and returns the start state.
  virtual StateId reset(std::uint64_t seed);

  // Executes `a` against the environment's own stream.
  Observation step(StateId s, ActionId a) { return sample(s, a, stream_); }

 protected:
  virtual StateId start_state() = 0;
  void check_action(StateId s, ActionId a) const;

  Rng stream_;
};

}  // namespace aags::env
