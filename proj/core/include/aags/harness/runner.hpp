#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aags/env/environment.hpp"
#include "aags/harness/config.hpp"

namespace aags::harness {

struct EpisodeRecord {
  std::string env;
  std::string algo;
  std::optional<double> alpha;  // absent for UCT
  std::uint64_t seed = 0;
  double distance = 0.0;
  double discounted_return = 0.0;
  double undiscounted_return = 0.0;
  std::size_t steps = 0;
  bool reached_goal = false;
  double wall_ms = 0.0;

  bool operator==(const EpisodeRecord&) const = default;
};

// One environment instance of the sweep: a start/goal pair or a tunnel
// distance.
struct Scenario {
  std::size_t index = 0;
  EnvConfig env;
  double distance = 0.0;
  std::string label;
};

std::unique_ptr<env::Environment> make_environment(const EnvConfig& config);

// Expands the sweep into scenarios. Sampled pairs are drawn uniformly
// without replacement from the master seed.
std::vector<Scenario> resolve_scenarios(const ExperimentConfig& config);

std::uint64_t child_seed(std::uint64_t master, std::string_view env, std::string_view algo,
                         std::optional<double> alpha, std::size_t pair_index, std::size_t episode);

EpisodeRecord run_episode(const ExperimentConfig& config, const Scenario& scenario,
                          std::optional<double> alpha, std::uint64_t seed);

struct RunOptions {
  std::size_t jobs = 1;
  // When set, records.csv, metadata.json and summary.json are written here.
  std::optional<std::filesystem::path> out_dir;
};

// Runs every (alpha, scenario, episode) cell. Records come back in canonical
// cell order whatever the number of jobs.
std::vector<EpisodeRecord> run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

std::string csv_header();
std::string format_record(const EpisodeRecord& record);
std::vector<EpisodeRecord> parse_records(std::string_view csv);
std::vector<EpisodeRecord> read_records(const std::filesystem::path& path);

// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace aags::harness
