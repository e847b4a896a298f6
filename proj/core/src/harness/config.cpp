#include "aags/harness/config.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace aags::harness {
namespace {

using nlohmann::json;

// Strict object reader: every key must be consumed before finish().
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return node_.contains(key); }

  const json* get(const std::string& key) {
    used_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  std::string key(const std::string& k) const { return path_ + "." + k; }

  template <typename T>
  void read(const std::string& k, T& out) {
    if (const json* v = get(k)) out = convert<T>(*v, key(k));
  }

  template <typename T>
  T require(const std::string& k) {
    const json* v = get(k);
    if (v == nullptr) throw ConfigError(key(k) + ": missing required key");
    return convert<T>(*v, key(k));
  }

  void finish() const {
    for (const auto& [k, v] : node_.items()) {
      if (used_.count(k) == 0) throw ConfigError(key(k) + ": unknown key");
    }
  }

  template <typename T>
  static T convert(const json& v, const std::string& where) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(where + ": expected a boolean");
      return v.get<bool>();
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(where + ": expected a string");
      return v.get<std::string>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(where + ": expected a number");
      return v.get<T>();
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) throw ConfigError(where + ": expected a non-negative integer");
      const auto raw = v.get<std::uint64_t>();
      if (raw > std::numeric_limits<T>::max()) throw ConfigError(where + ": value out of range");
      return static_cast<T>(raw);
    } else {
      if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
      const auto raw = v.get<std::int64_t>();
      if (raw < std::numeric_limits<T>::min() || raw > std::numeric_limits<T>::max()) {
        throw ConfigError(where + ": value out of range");
      }
      return static_cast<T>(raw);
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> used_;
};

env::Cell to_cell(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) throw ConfigError(where + ": expected [x, y]");
  return {Section::convert<int>(v[0], where + "[0]"), Section::convert<int>(v[1], where + "[1]")};
}

void read_cell(Section& s, const std::string& k, env::Cell& out) {
  if (const json* v = s.get(k)) out = to_cell(*v, s.key(k));
}

std::string read_text_file(const std::filesystem::path& path, const std::string& where) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(where + ": cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

EnvConfig parse_env(Section& s, const std::string& id, const std::filesystem::path& base_dir,
                    int& corridor_width) {
  if (id == "grid") {
    env::GridWorldConfig c;
    s.read("width", c.width);
    s.read("height", c.height);
    s.read("p_stay", c.p_stay);
    read_cell(s, "start", c.start);
    if (!s.has("goal")) c.goal = {c.width - 1, c.height - 1};
    read_cell(s, "goal", c.goal);
    s.read("r_goal", c.r_goal);
    s.read("sigma", c.sigma);
    s.read("gamma", c.gamma);
    s.read("shaping", c.shaping);
    return c;
  }
  if (id == "sailing") {
    env::SailingWorldConfig c;
    s.read("width", c.width);
    s.read("height", c.height);
    s.read("p_wind_change", c.p_wind_change);
    read_cell(s, "start", c.start);
    if (!s.has("goal")) c.goal = {c.width - 1, c.height - 1};
    read_cell(s, "goal", c.goal);
    s.read("initial_heading", c.initial_heading);
    s.read("initial_wind", c.initial_wind);
    s.read("w_progress", c.w_progress);
    s.read("w_wind", c.w_wind);
    s.read("w_border", c.w_border);
    s.read("gamma", c.gamma);
    return c;
  }
  if (id == "tunnel") {
    env::TunnelWorldConfig c;
    s.read("corridor_width", corridor_width);
    int distance = 20;
    s.read("distance", distance);
    const json* layout = s.get("layout");
    const json* layout_file = s.get("layout_file");
    if (layout != nullptr && layout_file != nullptr) {
      throw ConfigError(s.key("layout") + ": give either layout or layout_file, not both");
    }
    try {
      if (layout != nullptr) {
        c.layout = env::TunnelLayout::parse(Section::convert<std::string>(*layout, s.key("layout")));
      } else if (layout_file != nullptr) {
        const auto rel = Section::convert<std::string>(*layout_file, s.key("layout_file"));
        c.layout = env::TunnelLayout::parse(read_text_file(base_dir / rel, s.key("layout_file")));
      } else {
        c.layout = env::make_tunnel_layout(distance, corridor_width);
      }
    } catch (const std::invalid_argument& e) {
      throw ConfigError(s.key("layout") + ": " + e.what());
    }
    s.read("r_small", c.r_small);
    s.read("r_large", c.r_large);
    s.read("gamma", c.gamma);
    return c;
  }
  if (id == "bandit") {
    env::BanditConfig c;
    if (const json* arms = s.get("arms")) {
      const std::string where = s.key("arms");
      if (!arms->is_array()) throw ConfigError(where + ": expected a list of arms");
      c.arms.clear();
      for (std::size_t i = 0; i < arms->size(); ++i) {
        const json& arm = (*arms)[i];
        const std::string aw = where + "[" + std::to_string(i) + "]";
        if (!arm.is_array()) throw ConfigError(aw + ": expected a list of [probability, reward]");
        std::vector<env::BanditConfig::Branch> branches;
        for (std::size_t j = 0; j < arm.size(); ++j) {
          const std::string bw = aw + "[" + std::to_string(j) + "]";
          if (!arm[j].is_array() || arm[j].size() != 2) throw ConfigError(bw + ": expected [probability, reward]");
          branches.push_back({Section::convert<double>(arm[j][0], bw), Section::convert<double>(arm[j][1], bw)});
        }
        c.arms.push_back(std::move(branches));
      }
    }
    s.read("gamma", c.gamma);
    return c;
  }
  if (id == "chain") {
    env::ChainConfig c;
    s.read("length", c.length);
    s.read("gamma", c.gamma);
    return c;
  }
  throw ConfigError(s.key("id") + ": unknown environment '" + id + "'");
}

void parse_algo(Section& s, ExperimentConfig& c) {
  const auto id = s.require<std::string>("id");
  if (id == "aags") {
    c.algo = Algorithm::kAags;
    AagsConfig& a = c.aags;
    s.read("epsilon", a.confidence.epsilon);
    s.read("delta", a.confidence.delta);
    s.read("horizon", a.horizon);
    // Static worlds keep the graph between steps; dynamic ones start fresh.
    a.reuse_graph = !std::holds_alternative<env::SailingWorldConfig>(c.env);
    s.read("reuse_graph", a.reuse_graph);
    s.read("beta_floor_fraction", a.beta_floor_fraction);
    s.read("root_action_selection", a.root_action_selection);
    s.read("outcome_cap", a.outcome_cap);
  } else if (id == "uct") {
    c.algo = Algorithm::kUct;
    s.read("exploration", c.uct.exploration);
    s.read("rollout_horizon", c.uct.rollout_horizon);
    s.read("max_depth", c.uct.max_depth);
  } else {
    throw ConfigError(s.key("id") + ": unknown algorithm '" + id + "'");
  }
}

void parse_sweep(Section& s, ExperimentConfig& c) {
  if (const json* alpha = s.get("alpha")) {
    const std::string where = s.key("alpha");
    if (!alpha->is_array()) throw ConfigError(where + ": expected a list of numbers");
    for (std::size_t i = 0; i < alpha->size(); ++i) {
      c.sweep.alphas.push_back(Section::convert<double>((*alpha)[i], where + "[" + std::to_string(i) + "]"));
    }
  }
  if (const json* d = s.get("distances")) {
    const std::string where = s.key("distances");
    if (!d->is_array()) throw ConfigError(where + ": expected a list of integers");
    for (std::size_t i = 0; i < d->size(); ++i) {
      c.sweep.distances.push_back(Section::convert<int>((*d)[i], where + "[" + std::to_string(i) + "]"));
    }
  }
  if (const json* p = s.get("pairs")) {
    const std::string where = s.key("pairs");
    if (p->is_number()) {
      c.sweep.sampled_pairs = Section::convert<std::size_t>(*p, where);
    } else if (p->is_array()) {
      for (std::size_t i = 0; i < p->size(); ++i) {
        Section pair((*p)[i], where + "[" + std::to_string(i) + "]");
        StartGoal sg;
        for (const char* k : {"start", "goal"}) {
          if (!pair.has(k)) throw ConfigError(pair.key(k) + ": missing required key");
        }
        sg.start = to_cell(*pair.get("start"), pair.key("start"));
        sg.goal = to_cell(*pair.get("goal"), pair.key("goal"));
        pair.finish();
        c.sweep.pairs.push_back(sg);
      }
    } else {
      throw ConfigError(where + ": expected a count or a list of {start, goal}");
    }
  }
}

void parse_run(Section& s, RunConfig& r) {
  s.read("episodes", r.episodes);
  s.read("samples_per_step", r.samples_per_step);
  s.read("max_steps", r.max_steps);
  s.read("seed", r.seed);
  s.read("out", r.out);
  s.read("timing", r.timing);
}

bool is_grid_like(const EnvConfig& env) {
  return std::holds_alternative<env::GridWorldConfig>(env) ||
         std::holds_alternative<env::SailingWorldConfig>(env);
}

}  // namespace

std::string_view algorithm_name(Algorithm algo) { return algo == Algorithm::kAags ? "aags" : "uct"; }

void ExperimentConfig::validate() const {
  auto wrap = [](const std::string& where, auto&& fn) {
    try {
      fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(where + ": " + e.what());
    }
  };
  wrap("env", [&] {
    std::visit([](const auto& c) { c.validate(); }, env);
  });
  if (algo == Algorithm::kAags) {
    if (sweep.alphas.empty()) throw ConfigError("sweep.alpha: AAGS needs a nonempty alpha list");
    for (double a : sweep.alphas) {
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("sweep.alpha: values must lie in [0, 1]");
    }
    wrap("algo", [&] {
      AagsConfig probe = aags;
      probe.n_trajectories = run.samples_per_step;
      probe.validate();
    });
  } else {
    if (!sweep.alphas.empty()) throw ConfigError("sweep.alpha: only meaningful for algo aags");
    wrap("algo", [&] {
      UctConfig probe = uct;
      probe.n_samples = run.samples_per_step;
      probe.validate();
    });
  }
  const bool tunnel = std::holds_alternative<env::TunnelWorldConfig>(env);
  if (!sweep.distances.empty() && !tunnel) throw ConfigError("sweep.distances: only valid for env tunnel");
  for (int d : sweep.distances) {
    if (d < 1) throw ConfigError("sweep.distances: values must be >= 1");
  }
  if ((sweep.sampled_pairs > 0 || !sweep.pairs.empty()) && !is_grid_like(env)) {
    throw ConfigError("sweep.pairs: only valid for env grid or sailing");
  }
  if (tunnel && (tunnel_corridor_width < 1)) throw ConfigError("env.corridor_width: must be >= 1");
  if (run.episodes == 0) throw ConfigError("run.episodes: must be >= 1");
  if (run.samples_per_step == 0) throw ConfigError("run.samples_per_step: must be >= 1");
  if (run.max_steps == 0) throw ConfigError("run.max_steps: must be >= 1");
  if (std::holds_alternative<env::GridWorldConfig>(env) && sweep.sampled_pairs > 0) {
    const auto& g = std::get<env::GridWorldConfig>(env);
    const double cells = static_cast<double>(g.width) * g.height;
    if (static_cast<double>(sweep.sampled_pairs) > cells * (cells - 1)) {
      throw ConfigError("sweep.pairs: more pairs requested than the grid holds");
    }
  }
  if (std::holds_alternative<env::SailingWorldConfig>(env) && sweep.sampled_pairs > 0) {
    const auto& g = std::get<env::SailingWorldConfig>(env);
    const double cells = static_cast<double>(g.width) * g.height;
    if (static_cast<double>(sweep.sampled_pairs) > cells * (cells - 1)) {
      throw ConfigError("sweep.pairs: more pairs requested than the map holds");
    }
  }
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  Section root(doc, "config");
  ExperimentConfig c;

  const json* env_node = root.get("env");
  if (env_node == nullptr) throw ConfigError("env: missing required key");
  Section env(*env_node, "env");
  c.env_id = env.require<std::string>("id");
  c.env = parse_env(env, c.env_id, base_dir, c.tunnel_corridor_width);
  env.finish();

  const json* algo_node = root.get("algo");
  if (algo_node == nullptr) throw ConfigError("algo: missing required key");
  Section algo(*algo_node, "algo");
  parse_algo(algo, c);
  algo.finish();

  if (const json* sweep_node = root.get("sweep")) {
    Section sweep(*sweep_node, "sweep");
    parse_sweep(sweep, c);
    sweep.finish();
  }
  if (const json* run_node = root.get("run")) {
    Section run(*run_node, "run");
    parse_run(run, c.run);
    run.finish();
  }
  for (const auto& [k, v] : doc.items()) {
    if (k != "env" && k != "algo" && k != "sweep" && k != "run") throw ConfigError(k + ": unknown key");
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text_file(path, "config"), path.parent_path());
}

std::string config_to_json(const ExperimentConfig& c) {
  json out;
  json env;
  env["id"] = c.env_id;
  auto cell = [](env::Cell p) { return json::array({p.x, p.y}); };
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, env::GridWorldConfig>) {
          env["width"] = e.width;
          env["height"] = e.height;
          env["p_stay"] = e.p_stay;
          env["start"] = cell(e.start);
          env["goal"] = cell(e.goal);
          env["r_goal"] = e.r_goal;
          env["sigma"] = e.sigma > 0.0 ? e.sigma : e.width / 5.0;
          env["gamma"] = e.gamma;
          env["shaping"] = e.shaping < 0.0 ? 1.0 - e.gamma : e.shaping;
        } else if constexpr (std::is_same_v<T, env::SailingWorldConfig>) {
          env["width"] = e.width;
          env["height"] = e.height;
          env["p_wind_change"] = e.p_wind_change;
          env["start"] = cell(e.start);
          env["goal"] = cell(e.goal);
          env["initial_heading"] = e.initial_heading;
          env["initial_wind"] = e.initial_wind;
          env["w_progress"] = e.w_progress;
          env["w_wind"] = e.w_wind;
          env["w_border"] = e.w_border;
          env["gamma"] = e.gamma;
        } else if constexpr (std::is_same_v<T, env::TunnelWorldConfig>) {
          env["corridor_width"] = c.tunnel_corridor_width;
          env["layout"] = e.layout.to_string();
          env["r_small"] = e.r_small;
          env["r_large"] = e.r_large;
          env["gamma"] = e.gamma;
        } else if constexpr (std::is_same_v<T, env::BanditConfig>) {
          json arms = json::array();
          for (const auto& arm : e.arms) {
            json branches = json::array();
            for (const auto& b : arm) branches.push_back(json::array({b.probability, b.reward}));
            arms.push_back(branches);
          }
          env["arms"] = arms;
          env["gamma"] = e.gamma;
        } else {
          env["length"] = e.length;
          env["gamma"] = e.gamma;
        }
      },
      c.env);
  out["env"] = env;

  json algo;
  algo["id"] = std::string(algorithm_name(c.algo));
  if (c.algo == Algorithm::kAags) {
    algo["epsilon"] = c.aags.confidence.epsilon;
    algo["delta"] = c.aags.confidence.delta;
    algo["horizon"] = c.aags.horizon;
    algo["reuse_graph"] = c.aags.reuse_graph;
    algo["beta_floor_fraction"] = c.aags.beta_floor_fraction;
    algo["root_action_selection"] = c.aags.root_action_selection;
    algo["outcome_cap"] = c.aags.outcome_cap;
  } else {
    algo["exploration"] = c.uct.exploration;
    algo["rollout_horizon"] = c.uct.rollout_horizon;
    algo["max_depth"] = c.uct.max_depth;
  }
  out["algo"] = algo;

  json sweep = json::object();
  if (!c.sweep.alphas.empty()) sweep["alpha"] = c.sweep.alphas;
  if (!c.sweep.distances.empty()) sweep["distances"] = c.sweep.distances;
  if (!c.sweep.pairs.empty()) {
    json pairs = json::array();
    for (const auto& p : c.sweep.pairs) pairs.push_back({{"start", cell(p.start)}, {"goal", cell(p.goal)}});
    sweep["pairs"] = pairs;
  } else if (c.sweep.sampled_pairs > 0) {
    sweep["pairs"] = c.sweep.sampled_pairs;
  }
  out["sweep"] = sweep;

  out["run"] = {{"episodes", c.run.episodes},
                {"samples_per_step", c.run.samples_per_step},
                {"max_steps", c.run.max_steps},
                {"seed", c.run.seed},
                {"out", c.run.out},
                {"timing", c.run.timing}};
  return out.dump(2);
}

}  // namespace aags::harness
