#include "aags/uct.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aags {

void UctConfig::validate() const {
  if (!(exploration >= 0.0)) throw std::invalid_argument("UCT exploration constant must be >= 0");
  if (rollout_horizon == 0) throw std::invalid_argument("UCT rollout horizon must be >= 1");
  if (n_samples == 0) throw std::invalid_argument("UCT needs at least one sample");
  if (max_depth == 0) throw std::invalid_argument("UCT max depth must be >= 1");
}

UctPlanner::Node* UctPlanner::Node::child(ActionId a, StateId next) {
  for (Child& c : children) {
    if (c.action == a && c.next == next) return c.node.get();
  }
  return nullptr;
}

UctPlanner::UctPlanner(const GenerativeModel& model, AmdpSpec spec, UctConfig config)
    : model_(model), spec_(spec), config_(config), rng_(config.seed) {
  spec_.validate();
  config_.validate();
}

UctPlanner::Node UctPlanner::make_node(StateId s) const {
  Node node;
  node.state = s;
  node.actions.resize(model_.num_actions(s));
  return node;
}

ActionId UctPlanner::search(StateId s0) {
  root_ = std::make_unique<Node>(make_node(s0));
  if (root_->actions.empty()) throw std::invalid_argument("UCT root has no actions");
  for (std::size_t i = 0; i < config_.n_samples; ++i) simulate(*root_, 0);

  double best = -std::numeric_limits<double>::infinity();
  ties_.clear();
  for (std::size_t a = 0; a < root_->actions.size(); ++a) {
    const ActionStats& st = root_->actions[a];
    if (st.visits == 0) continue;
    if (st.mean > best) {
      best = st.mean;
      ties_.assign(1, a);
    } else if (st.mean == best) {
      ties_.push_back(a);
    }
  }
  return ActionId{static_cast<std::uint32_t>(ties_[rng_.index(ties_.size())])};
}

ActionId UctPlanner::select(const Node& node) {
  // Untried actions first, in order.
  for (std::size_t a = 0; a < node.actions.size(); ++a) {
    if (node.actions[a].visits == 0) return ActionId{static_cast<std::uint32_t>(a)};
  }
  const double log_n = std::log(static_cast<double>(node.visits));
  double best = -std::numeric_limits<double>::infinity();
  ties_.clear();
  for (std::size_t a = 0; a < node.actions.size(); ++a) {
    const ActionStats& st = node.actions[a];
    const double score =
        st.mean + config_.exploration * std::sqrt(log_n / static_cast<double>(st.visits));
    if (score > best) {
      best = score;
      ties_.assign(1, a);
    } else if (score == best) {
      ties_.push_back(a);
    }
  }
  return ActionId{static_cast<std::uint32_t>(ties_[rng_.index(ties_.size())])};
}

double UctPlanner::simulate(Node& node, std::size_t depth) {
  if (node.actions.empty() || depth >= config_.max_depth) return 0.0;
  const ActionId a = select(node);
  const Observation obs = model_.sample(node.state, a, rng_);
  check_reward(spec_, obs.reward);

  double value = obs.reward;
  if (!obs.terminal) {
    if (Node* child = node.child(a, obs.next_state)) {
      value += spec_.gamma * simulate(*child, depth + 1);
    } else {
      node.children.push_back({a, obs.next_state, std::make_unique<Node>(make_node(obs.next_state))});
      value += spec_.gamma * rollout(obs.next_state);
    }
  }

  ++node.visits;
  ActionStats& st = node.actions[a.value];
  ++st.visits;
  st.mean += (value - st.mean) / static_cast<double>(st.visits);
  return value;
}

double UctPlanner::rollout(StateId s) {
  double total = 0.0;
  double discount = 1.0;
  for (std::size_t t = 0; t < config_.rollout_horizon; ++t) {
    const std::size_t n = model_.num_actions(s);
    if (n == 0) break;
    const ActionId a{static_cast<std::uint32_t>(rng_.index(n))};
    const Observation obs = model_.sample(s, a, rng_);
    total += discount * obs.reward;
    if (obs.terminal) break;
    discount *= spec_.gamma;
    s = obs.next_state;
  }
  return total;
}

}  // namespace aags
