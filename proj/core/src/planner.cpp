#include "aags/planner.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "aags/choquet.hpp"

namespace aags {
namespace {

// Selection treats near-equal upper bounds as ties; recommendation is exact.
constexpr double kTieTolerance = 1e-12;

double clamp_to(const ValueBounds& b, double v) { return std::clamp(v, b.lower, b.upper); }

// Ordered set: deduplicated, first insertion wins.
class Trace {
 public:
  void add(StateId s) {
    if (seen_.insert(s).second) order_.push_back(s);
  }
  std::span<const StateId> states() const { return order_; }

 private:
  std::vector<StateId> order_;
  std::unordered_set<StateId> seen_;
};

}  // namespace

void AagsConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  if (n_trajectories == 0) throw std::invalid_argument("AAGS needs at least one trajectory");
  if (horizon == 0) throw std::invalid_argument("AAGS horizon must be at least 1");
  if (!(beta_floor_fraction > 0.0)) throw std::invalid_argument("beta floor must be positive");
  if (outcome_cap < 2 || outcome_cap > kMaxSolvedOutcomes) {
    throw std::invalid_argument("outcome cap must lie in [2, 12]");
  }
  (void)required_samples(confidence);
}

bool SearchNode::has_parent(StateId s) const {
  return std::find(parents.begin(), parents.end(), s) != parents.end();
}

SearchNode* SearchGraph::find(StateId s) {
  const auto it = nodes_.find(s);
  return it == nodes_.end() ? nullptr : &it->second;
}

const SearchNode* SearchGraph::find(StateId s) const {
  const auto it = nodes_.find(s);
  return it == nodes_.end() ? nullptr : &it->second;
}

SearchNode& SearchGraph::ensure(StateId s, std::size_t num_actions, bool terminal,
                                const ValueBounds& vacuous) {
  auto [it, inserted] = nodes_.try_emplace(s);
  SearchNode& node = it->second;
  if (inserted) {
    node.state = s;
    node.terminal = terminal;
    if (terminal || num_actions == 0) {
      node.lower = node.upper = clamp_to(vacuous, 0.0);
    } else {
      node.edges.resize(num_actions);
      for (SearchEdge& e : node.edges) e.bounds = {vacuous.lower, vacuous.upper};
      node.lower = vacuous.lower;
      node.upper = vacuous.upper;
    }
  }
  return node;
}

AagsPlanner::AagsPlanner(const GenerativeModel& model, AmdpSpec spec, AagsConfig config)
    : model_(model), spec_(spec), config_(config), rng_(config.seed) {
  spec_.validate();
  config_.validate();
  value_bounds_ = spec_.value_bounds();
  required_samples_ = required_samples(config_.confidence);
  beta_floor_ = config_.beta_floor_fraction * (value_bounds_.upper - value_bounds_.lower);
  regret_ = value_bounds_.upper - value_bounds_.lower;
}

void AagsPlanner::set_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
  config_.alpha = alpha;
}

double AagsPlanner::beta() const {
  const double beta = (1.0 - spec_.gamma) / spec_.gamma * regret_;
  return std::max({beta, beta_floor_, std::numeric_limits<double>::min()});
}

double AagsPlanner::accuracy(std::uint64_t samples) {
  if (samples >= accuracy_cache_.size()) {
    accuracy_cache_.resize(std::max<std::size_t>(samples + 1, 2 * accuracy_cache_.size()),
                           std::numeric_limits<double>::quiet_NaN());
  }
  double& eps = accuracy_cache_[samples];
  if (std::isnan(eps)) eps = accuracy_for(config_.confidence.delta, samples);
  return eps;
}

SearchNode& AagsPlanner::ensure_node(StateId s, bool terminal) {
  if (SearchNode* node = graph_.find(s)) return *node;
  return graph_.ensure(s, terminal ? 0 : model_.num_actions(s), terminal, value_bounds_);
}

ActionId AagsPlanner::search(StateId s0) {
  if (!config_.reuse_graph) graph_.clear();
  const SearchNode& root = ensure_node(s0, false);
  if (root.edges.empty()) throw std::invalid_argument("search root has no actions");
  regret_ = value_bounds_.upper - value_bounds_.lower;
  for (std::size_t n = 0; n < config_.n_trajectories; ++n) run_trajectory(s0);
  return recommend(s0);
}

ActionId AagsPlanner::select_optimistic(const SearchNode& node) {
  double best = -std::numeric_limits<double>::infinity();
  tie_scratch_.clear();
  for (std::size_t a = 0; a < node.edges.size(); ++a) {
    const double u = node.edges[a].bounds.upper;
    if (u > best + kTieTolerance) {
      best = u;
      tie_scratch_.assign(1, a);
    } else if (u >= best - kTieTolerance) {
      tie_scratch_.push_back(a);
    }
  }
  const std::size_t pick = tie_scratch_[rng_.index(tie_scratch_.size())];
  return ActionId{static_cast<std::uint32_t>(pick)};
}

void AagsPlanner::run_trajectory(StateId s0) {
  Trace trace;
  trace.add(s0);
  StateId s = s0;
  for (std::size_t depth = 0; depth < config_.horizon; ++depth) {
    SearchNode* node = graph_.find(s);
    if (node->terminal || node->edges.empty()) break;

    ActionId a = select_optimistic(*node);
    if (config_.root_action_selection) {
      const ActionId root_choice = select_optimistic(*graph_.find(s0));
      if (root_choice.value < node->edges.size()) a = root_choice;
    }

    SearchEdge& edge = node->edges[a.value];
    Observation obs;
    const std::uint64_t visits = edge.stats.visits();
    if (visits > 0 && static_cast<double>(visits) >= required_samples_) {
      obs = edge.stats.sample(rng_);
    } else {
      obs = model_.sample(s, a, rng_);
      ++generator_calls_;
      check_reward(spec_, obs.reward);
    }
    edge.stats.record(obs);
    edge.belief.reset();

    const StateId parent = s;
    SearchNode& next = ensure_node(obs.next_state, obs.terminal);
    if (!next.has_parent(parent)) next.parents.push_back(parent);
    trace.add(obs.next_state);
    s = obs.next_state;
    if (obs.terminal) break;
  }
  backpropagate(trace.states());
  update_regret(s0);
}

ActionBounds AagsPlanner::evaluate_edge(SearchEdge& edge) {
  if (edge.stats.visits() == 0) return {value_bounds_.lower, value_bounds_.upper};
  if (!edge.belief) {
    BinnedDistribution binned = bin_outcomes(edge.stats.counts(), config_.outcome_cap);
    const double eps = accuracy(binned.dist.total());
    edge.belief = dist2belief_with_accuracy(binned.dist, eps, config_.confidence.delta).belief;
    edge.groups = std::move(binned.groups);
  }
  const std::size_t atoms = edge.groups.size();
  scratch_lower_.assign(atoms, std::numeric_limits<double>::infinity());
  scratch_upper_.assign(atoms, -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < atoms; ++k) {
    for (const std::size_t i : edge.groups[k]) {
      const Outcome& o = edge.stats.outcome(i);
      double lo = o.reward;
      double hi = o.reward;
      if (!o.terminal) {
        const SearchNode* succ = graph_.find(o.next_state);
        const double succ_lower = succ ? succ->lower : value_bounds_.lower;
        const double succ_upper = succ ? succ->upper : value_bounds_.upper;
        lo += spec_.gamma * succ_lower;
        hi += spec_.gamma * succ_upper;
      }
      scratch_lower_[k] = std::min(scratch_lower_[k], lo);
      scratch_upper_[k] = std::max(scratch_upper_[k], hi);
    }
  }
  const double lower = choquet_lower(*edge.belief, scratch_lower_, value_bounds_);
  const double upper = choquet_upper(*edge.belief, scratch_upper_, value_bounds_);
  return {clamp_to(value_bounds_, lower), clamp_to(value_bounds_, upper)};
}

ActionBounds AagsPlanner::action_bounds(StateId s, ActionId a) {
  SearchNode* node = graph_.find(s);
  if (node == nullptr || a.value >= node->edges.size()) {
    return {value_bounds_.lower, value_bounds_.upper};
  }
  return evaluate_edge(node->edges[a.value]);
}

AagsPlanner::Change AagsPlanner::refresh_node(SearchNode& node) {
  if (node.terminal || node.edges.empty()) return {0.0, 0.0};
  double lower = -std::numeric_limits<double>::infinity();
  double upper = -std::numeric_limits<double>::infinity();
  for (SearchEdge& edge : node.edges) {
    edge.bounds = evaluate_edge(edge);
    lower = std::max(lower, edge.bounds.lower);
    upper = std::max(upper, edge.bounds.upper);
  }
  const double old_lower = node.lower;
  const double old_upper = node.upper;
  double new_lower = std::max(old_lower, lower);
  double new_upper = std::min(old_upper, upper);
  if (new_lower > new_upper) {
    // Only one side can have moved past the other; keep that side's old value.
    if (new_lower == old_lower) {
      new_upper = new_lower;
    } else {
      new_lower = new_upper;
    }
  }
  node.lower = new_lower;
  node.upper = new_upper;
  return {new_lower - old_lower, old_upper - new_upper};
}

std::size_t AagsPlanner::backpropagate(std::span<const StateId> trace) {
  const double threshold = beta();
  std::deque<StateId> work;
  std::unordered_set<StateId> queued;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    if (!graph_.contains(*it)) throw std::invalid_argument("trace state missing from graph");
    if (queued.insert(*it).second) work.push_back(*it);
  }
  std::size_t enqueued = 0;
  while (!work.empty()) {
    const StateId s = work.front();
    work.pop_front();
    queued.erase(s);
    SearchNode& node = *graph_.find(s);
    const Change change = refresh_node(node);
    if (change.lower_rise > threshold || change.upper_drop > threshold) {
      for (const StateId p : node.parents) {
        if (queued.insert(p).second) {
          work.push_back(p);
          ++enqueued;
        }
      }
    }
  }
  return enqueued;
}

void AagsPlanner::update_regret(StateId s0) {
  const SearchNode* root = graph_.find(s0);
  double best = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;
  for (const SearchEdge& edge : root->edges) {
    if (edge.stats.visits() == 0) continue;
    ++evaluated;
    const double v = hurwicz(edge.bounds, config_.alpha);
    if (v > best) {
      second = best;
      best = v;
    } else if (v > second) {
      second = v;
    }
  }
  regret_ = evaluated < 2 ? value_bounds_.upper - value_bounds_.lower : best - second;
}

ActionId AagsPlanner::recommend(StateId s0) { return recommend(s0, config_.alpha); }

ActionId AagsPlanner::recommend(StateId s0, double alpha) {
  const SearchNode* root = graph_.find(s0);
  if (root == nullptr) throw std::invalid_argument("recommend: state not in the search graph");
  std::vector<ActionBounds> bounds;
  std::vector<std::size_t> index;
  for (std::size_t a = 0; a < root->edges.size(); ++a) {
    if (root->edges[a].stats.visits() == 0) continue;
    bounds.push_back(root->edges[a].bounds);
    index.push_back(a);
  }
  if (bounds.empty()) throw std::invalid_argument("recommend: no evaluated action at state");
  const std::vector<std::size_t> ties = hurwicz_ties(bounds, alpha);
  const std::size_t pick = index[ties[rng_.index(ties.size())]];
  return ActionId{static_cast<std::uint32_t>(pick)};
}

double hurwicz(const ActionBounds& b, double alpha) { return (1.0 - alpha) * b.lower + alpha * b.upper; }

std::vector<std::size_t> hurwicz_ties(std::span<const ActionBounds> bounds, double alpha) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double v = hurwicz(bounds[i], alpha);
    if (v > best) {
      best = v;
      ties.assign(1, i);
    } else if (v == best) {
      ties.push_back(i);
    }
  }
  return ties;
}

}  // namespace aags
