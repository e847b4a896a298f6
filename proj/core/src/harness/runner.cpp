#include "aags/harness/runner.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aags/harness/summary.hpp"
#include "json.hpp"

namespace aags::harness {
namespace {

constexpr std::string_view kColumns[] = {"env",   "algo", "alpha", "seed", "distance", "discounted_return",
                                         "undiscounted_return", "steps", "reached_goal", "wall_ms"};

std::string cell_text(env::Cell c) { return std::to_string(c.x) + "," + std::to_string(c.y); }

template <typename Config>
Scenario pair_scenario(std::size_t index, Config config, const StartGoal& pair) {
  config.start = pair.start;
  config.goal = pair.goal;
  const double d = env::euclidean(pair.start, pair.goal);
  return {index, config, d, cell_text(pair.start) + "->" + cell_text(pair.goal)};
}

template <typename Config>
std::vector<StartGoal> sample_pairs(const Config& config, std::size_t count, std::uint64_t master) {
  Rng rng(hash_combine(master, fnv1a("start-goal pairs")));
  const auto cells = static_cast<std::uint64_t>(config.width) * static_cast<std::uint64_t>(config.height);
  auto to_cell = [&](std::uint64_t i) {
    return env::Cell{static_cast<int>(i % static_cast<std::uint64_t>(config.width)),
                     static_cast<int>(i / static_cast<std::uint64_t>(config.width))};
  };
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::vector<StartGoal> pairs;
  while (pairs.size() < count) {
    const std::uint64_t s = rng.index(cells);
    const std::uint64_t g = rng.index(cells);
    if (s == g || !seen.insert({s, g}).second) continue;
    pairs.push_back({to_cell(s), to_cell(g)});
  }
  return pairs;
}

std::string env_label(const EnvConfig& config) {
  return std::visit(
      [](const auto& c) -> std::string {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, env::GridWorldConfig> || std::is_same_v<T, env::SailingWorldConfig>) {
          return cell_text(c.start) + "->" + cell_text(c.goal);
        } else if constexpr (std::is_same_v<T, env::TunnelWorldConfig>) {
          return "layout";
        } else {
          return "default";
        }
      },
      config);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string metadata_json(const ExperimentConfig& config, const std::vector<Scenario>& scenarios) {
  nlohmann::json meta;
  meta["config"] = nlohmann::json::parse(config_to_json(config));
  nlohmann::json list = nlohmann::json::array();
  for (const Scenario& s : scenarios) {
    list.push_back({{"index", s.index}, {"label", s.label}, {"distance", s.distance}});
  }
  meta["scenarios"] = list;
  meta["columns"] = kColumns;
  meta["record_count"] = scenarios.size() *
                         (config.algo == Algorithm::kAags ? config.sweep.alphas.size() : 1) *
                         config.run.episodes;
  return meta.dump(2) + "\n";
}

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    const std::size_t end = line.find(sep, begin);
    out.emplace_back(line.substr(begin, end == std::string_view::npos ? std::string_view::npos : end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& text, const char* column) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("records: bad ") + column + " value '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

std::unique_ptr<env::Environment> make_environment(const EnvConfig& config) {
  return std::visit(
      [](const auto& c) -> std::unique_ptr<env::Environment> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, env::GridWorldConfig>) {
          return std::make_unique<env::GridWorld>(c);
        } else if constexpr (std::is_same_v<T, env::SailingWorldConfig>) {
          return std::make_unique<env::SailingWorld>(c);
        } else if constexpr (std::is_same_v<T, env::TunnelWorldConfig>) {
          return std::make_unique<env::TunnelWorld>(c);
        } else if constexpr (std::is_same_v<T, env::BanditConfig>) {
          return std::make_unique<env::Bandit>(c);
        } else {
          return std::make_unique<env::Chain>(c);
        }
      },
      config);
}

std::vector<Scenario> resolve_scenarios(const ExperimentConfig& config) {
  std::vector<Scenario> out;
  if (const auto* tunnel = std::get_if<env::TunnelWorldConfig>(&config.env);
      tunnel != nullptr && !config.sweep.distances.empty()) {
    for (int d : config.sweep.distances) {
      env::TunnelWorldConfig c = *tunnel;
      c.layout = env::make_tunnel_layout(d, config.tunnel_corridor_width);
      out.push_back({out.size(), c, static_cast<double>(d), "distance " + std::to_string(d)});
    }
    return out;
  }
  auto expand = [&](const auto& c) {
    std::vector<StartGoal> pairs = config.sweep.pairs;
    if (pairs.empty() && config.sweep.sampled_pairs > 0) {
      pairs = sample_pairs(c, config.sweep.sampled_pairs, config.run.seed);
    }
    for (const StartGoal& p : pairs) out.push_back(pair_scenario(out.size(), c, p));
  };
  if (const auto* grid = std::get_if<env::GridWorldConfig>(&config.env)) expand(*grid);
  if (const auto* sailing = std::get_if<env::SailingWorldConfig>(&config.env)) expand(*sailing);
  if (out.empty()) {
    const auto probe = make_environment(config.env);
    out.push_back({0, config.env, probe->start_goal_distance(), env_label(config.env)});
  }
  for (const Scenario& s : out) {
    try {
      std::visit([](const auto& c) { c.validate(); }, s.env);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("sweep.pairs: " + s.label + ": " + e.what());
    }
  }
  return out;
}

std::uint64_t child_seed(std::uint64_t master, std::string_view env, std::string_view algo,
                         std::optional<double> alpha, std::size_t pair_index, std::size_t episode) {
  std::uint64_t h = splitmix64(master);
  h = hash_combine(h, fnv1a(env));
  h = hash_combine(h, fnv1a(algo));
  h = hash_combine(h, fnv1a(alpha ? format_double(*alpha) : std::string("na")));
  h = hash_combine(h, pair_index);
  return hash_combine(h, episode);
}

EpisodeRecord run_episode(const ExperimentConfig& config, const Scenario& scenario,
                          std::optional<double> alpha, std::uint64_t seed) {
  const auto started = std::chrono::steady_clock::now();
  const auto environment = make_environment(scenario.env);
  const AmdpSpec spec = environment->spec();
  const std::uint64_t planner_seed = hash_combine(seed, fnv1a("planner"));

  std::optional<AagsPlanner> aags;
  std::optional<UctPlanner> uct;
  if (config.algo == Algorithm::kAags) {
    AagsConfig c = config.aags;
    c.alpha = alpha.value_or(0.0);
    c.n_trajectories = config.run.samples_per_step;
    c.seed = planner_seed;
    aags.emplace(*environment, spec, c);
  } else {
    UctConfig c = config.uct;
    c.n_samples = config.run.samples_per_step;
    c.seed = planner_seed;
    uct.emplace(*environment, spec, c);
  }

  EpisodeRecord record;
  record.env = config.env_id;
  record.algo = std::string(algorithm_name(config.algo));
  record.alpha = alpha;
  record.seed = seed;
  record.distance = scenario.distance;

  StateId state = environment->reset(hash_combine(seed, fnv1a("environment")));
  double discount = 1.0;
  bool terminal = false;
  while (!terminal && record.steps < config.run.max_steps && environment->num_actions(state) > 0) {
    const ActionId action = aags ? aags->search(state) : uct->search(state);
    const Observation obs = environment->step(state, action);
    record.discounted_return += discount * obs.reward;
    record.undiscounted_return += obs.reward;
    discount *= spec.gamma;
    ++record.steps;
    state = obs.next_state;
    // Goals that are not terminal in the model still end the episode.
    terminal = obs.terminal || environment->is_goal(state);
  }
  record.reached_goal = environment->is_goal(state);
  if (config.run.timing) {
    record.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }
  return record;
}

std::vector<EpisodeRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const std::vector<Scenario> scenarios = resolve_scenarios(config);
  std::vector<std::optional<double>> alphas;
  if (config.algo == Algorithm::kAags) {
    alphas.assign(config.sweep.alphas.begin(), config.sweep.alphas.end());
  } else {
    alphas.push_back(std::nullopt);
  }

  struct Task {
    std::size_t alpha;
    std::size_t scenario;
    std::size_t episode;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
      for (std::size_t e = 0; e < config.run.episodes; ++e) tasks.push_back({a, s, e});
    }
  }

  std::ofstream csv;
  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    write_file(*options.out_dir / "metadata.json", metadata_json(config, scenarios));
    csv.open(*options.out_dir / "records.csv", std::ios::binary | std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot write " + (*options.out_dir / "records.csv").string());
    csv << csv_header() << '\n' << std::flush;
  }

  std::vector<std::optional<EpisodeRecord>> results(tasks.size());
  std::mutex mutex;
  std::size_t flushed = 0;
  std::exception_ptr failure;
  std::atomic<std::size_t> next{0};

  // Completed records reach the CSV as soon as every earlier cell is done.
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      {
        std::lock_guard lock(mutex);
        if (failure) return;
      }
      try {
        const Task& t = tasks[i];
        const std::optional<double> alpha = alphas[t.alpha];
        const std::uint64_t seed = child_seed(config.run.seed, config.env_id, algorithm_name(config.algo), alpha,
                                              t.scenario, t.episode);
        EpisodeRecord record = run_episode(config, scenarios[t.scenario], alpha, seed);
        std::lock_guard lock(mutex);
        results[i] = std::move(record);
        while (flushed < results.size() && results[flushed]) {
          if (csv.is_open()) csv << format_record(*results[flushed]) << '\n' << std::flush;
          ++flushed;
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<EpisodeRecord> records;
  records.reserve(results.size());
  for (auto& r : results) records.push_back(std::move(*r));
  if (options.out_dir) {
    write_file(*options.out_dir / "summary.json", summary_to_json(summarize(records)));
  }
  return records;
}

std::string csv_header() {
  std::string out;
  for (std::string_view c : kColumns) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string format_record(const EpisodeRecord& r) {
  std::string out;
  out += r.env + ',' + r.algo + ',';
  out += (r.alpha ? format_double(*r.alpha) : std::string("na")) + ',';
  out += std::to_string(r.seed) + ',';
  out += format_double(r.distance) + ',';
  out += format_double(r.discounted_return) + ',';
  out += format_double(r.undiscounted_return) + ',';
  out += std::to_string(r.steps) + ',';
  out += (r.reached_goal ? "1," : "0,");
  out += format_double(r.wall_ms);
  return out;
}

std::vector<EpisodeRecord> parse_records(std::string_view csv) {
  std::vector<EpisodeRecord> out;
  std::istringstream in{std::string(csv)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      if (line != csv_header()) throw std::invalid_argument("records: unexpected header '" + line + "'");
      header = false;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != std::size(kColumns)) {
      throw std::invalid_argument("records: expected 10 columns in '" + line + "'");
    }
    EpisodeRecord r;
    r.env = f[0];
    r.algo = f[1];
    if (f[2] != "na") r.alpha = parse_number<double>(f[2], "alpha");
    r.seed = parse_number<std::uint64_t>(f[3], "seed");
    r.distance = parse_number<double>(f[4], "distance");
    r.discounted_return = parse_number<double>(f[5], "discounted_return");
    r.undiscounted_return = parse_number<double>(f[6], "undiscounted_return");
    r.steps = parse_number<std::size_t>(f[7], "steps");
    if (f[8] != "0" && f[8] != "1") throw std::invalid_argument("records: bad reached_goal value '" + f[8] + "'");
    r.reached_goal = f[8] == "1";
    r.wall_ms = parse_number<double>(f[9], "wall_ms");
    out.push_back(std::move(r));
  }
  if (header) throw std::invalid_argument("records: missing header");
  return out;
}

std::vector<EpisodeRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_records(text.str());
}

}  // namespace aags::harness
