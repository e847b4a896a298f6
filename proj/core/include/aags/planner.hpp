#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "aags/amdp.hpp"
#include "aags/belief_function.hpp"
#include "aags/evidence.hpp"
#include "aags/random.hpp"

namespace aags {

struct AagsConfig {
  double alpha = 0.0;  // 0 robust, 1 optimistic
  ConfidenceSpec confidence{0.1, 0.1};
  std::size_t n_trajectories = 500;
  std::size_t horizon = 10;
  bool reuse_graph = true;
  // beta floor as a fraction of (v_max - v_min).
  double beta_floor_fraction = 1e-4;
  std::uint64_t seed = 0;
  // Literal in-loop selection: argmax of the upper expectation at the search
  // root rather than at the current state.
  bool root_action_selection = false;
  std::size_t outcome_cap = kMaxSolvedOutcomes;

  void validate() const;
};

struct ActionBounds {
  double lower;
  double upper;
};

// (1 - alpha) lower + alpha upper.
double hurwicz(const ActionBounds& b, double alpha);

// Indices whose Hurwicz value equals the maximum exactly.
std::vector<std::size_t> hurwicz_ties(std::span<const ActionBounds> bounds, double alpha);

struct SearchEdge {
  EdgeStatistics stats;
  ActionBounds bounds{0.0, 0.0};
  // Rebuilt lazily after new observations.
  std::optional<BeliefFunction> belief;
  std::vector<std::vector<std::size_t>> groups;
};

struct SearchNode {
  StateId state;
  bool terminal = false;
  std::vector<SearchEdge> edges;
  double lower = 0.0;
  double upper = 0.0;
  // States with an edge into this one, in first-seen order.
  std::vector<StateId> parents;

  bool has_parent(StateId s) const;
};

// Possibly cyclic graph of visited states.
class SearchGraph {
 public:
  SearchNode* find(StateId s);
  const SearchNode* find(StateId s) const;
  bool contains(StateId s) const { return nodes_.count(s) != 0; }
  std::size_t size() const { return nodes_.size(); }
  void clear() { nodes_.clear(); }

  // Inserts a node with vacuous bounds if absent.
  SearchNode& ensure(StateId s, std::size_t num_actions, bool terminal, const ValueBounds& vacuous);

  const std::unordered_map<StateId, SearchNode>& nodes() const { return nodes_; }

 private:
  std::unordered_map<StateId, SearchNode> nodes_;
};

// Graph search over belief-function transition models with an alpha-Hurwicz
// recommendation rule. One instance per episode; not thread-safe.
class AagsPlanner {
 public:
  AagsPlanner(const GenerativeModel& model, AmdpSpec spec, AagsConfig config);

  // Runs the configured number of trajectories from s0 and returns the
  // recommended action.
  ActionId search(StateId s0);

  // argmax_a (1 - alpha) lowerE(s0, a) + alpha upperE(s0, a) over sampled
  // actions; ties broken uniformly from the planner's stream.
  ActionId recommend(StateId s0);
  ActionId recommend(StateId s0, double alpha);

  // Choquet bounds of (s, a) under the current successor bounds. Unsampled
  // actions are vacuous: (v_min, v_max).
  ActionBounds action_bounds(StateId s, ActionId a);

  // Worklist backup from the deepest trace state upwards. Returns how many
  // states were enqueued beyond the initial trace.
  std::size_t backpropagate(std::span<const StateId> trace);

  const SearchGraph& graph() const { return graph_; }
  void reset_graph() { graph_.clear(); }
  const AagsConfig& config() const { return config_; }
  void set_alpha(double alpha);

  double regret() const { return regret_; }
  double beta() const;
  std::uint64_t generator_calls() const { return generator_calls_; }

 private:
  struct Change {
    double lower_rise;
    double upper_drop;
  };

  void run_trajectory(StateId s0);
  SearchNode& ensure_node(StateId s, bool terminal);
  ActionBounds evaluate_edge(SearchEdge& edge);
  Change refresh_node(SearchNode& node);
  ActionId select_optimistic(const SearchNode& node);
  void update_regret(StateId s0);
  double accuracy(std::uint64_t samples);

  const GenerativeModel& model_;
  AmdpSpec spec_;
  AagsConfig config_;
  ValueBounds value_bounds_;
  double required_samples_;
  double beta_floor_;
  double regret_;
  Rng rng_;
  SearchGraph graph_;
  std::vector<double> accuracy_cache_;
  std::vector<double> scratch_lower_;
  std::vector<double> scratch_upper_;
  std::vector<std::size_t> tie_scratch_;
  std::uint64_t generator_calls_ = 0;
};

}  // namespace aags
