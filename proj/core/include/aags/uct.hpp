#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "aags/amdp.hpp"
#include "aags/random.hpp"

namespace aags {

struct UctConfig {
  double exploration = 0.5;
  std::size_t rollout_horizon = 25;
  std::size_t n_samples = 500;  // tree iterations per decision
  std::size_t max_depth = 100;
  std::uint64_t seed = 0;

  void validate() const;
};

// Vanilla UCT: UCB1 selection, one expansion per iteration, uniform random
// rollout truncated at rollout_horizon, mean backup. The tree is rebuilt for
// every decision.
class UctPlanner {
 public:
  struct ActionStats {
    std::uint64_t visits = 0;
    double mean = 0.0;
  };

  struct Node {
    StateId state;
    std::uint64_t visits = 0;
    std::vector<ActionStats> actions;
    struct Child {
      ActionId action;
      StateId next;
      std::unique_ptr<Node> node;
    };
    std::vector<Child> children;

    Node* child(ActionId a, StateId next);
  };

  UctPlanner(const GenerativeModel& model, AmdpSpec spec, UctConfig config);

  ActionId search(StateId s0);

  // Root of the last search (null before the first).
  const Node* root() const { return root_.get(); }

 private:
  double simulate(Node& node, std::size_t depth);
  double rollout(StateId s);
  ActionId select(const Node& node);
  Node make_node(StateId s) const;

  const GenerativeModel& model_;
  AmdpSpec spec_;
  UctConfig config_;
  Rng rng_;
  std::unique_ptr<Node> root_;
  std::vector<std::size_t> ties_;
};

}  // namespace aags
