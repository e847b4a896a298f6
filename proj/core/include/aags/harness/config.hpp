#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aags/env/grid_world.hpp"
#include "aags/env/sailing_world.hpp"
#include "aags/env/toy_models.hpp"
#include "aags/env/tunnel_world.hpp"
#include "aags/planner.hpp"
#include "aags/uct.hpp"

namespace aags::harness {

// Invalid experiment configuration. The message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using EnvConfig = std::variant<env::GridWorldConfig, env::SailingWorldConfig, env::TunnelWorldConfig,
                               env::BanditConfig, env::ChainConfig>;

enum class Algorithm { kAags, kUct };

struct StartGoal {
  env::Cell start;
  env::Cell goal;
  bool operator==(const StartGoal&) const = default;
};

struct SweepConfig {
  std::vector<double> alphas;       // AAGS only
  std::vector<int> distances;       // tunnel goal distances
  std::vector<StartGoal> pairs;     // explicit grid/sailing pairs
  std::size_t sampled_pairs = 0;    // grid/sailing pairs drawn from the master seed
};

struct RunConfig {
  std::size_t episodes = 1;
  std::size_t samples_per_step = 500;
  std::size_t max_steps = 100;
  std::uint64_t seed = 0;
  std::string out = "results";
  // Off keeps wall_ms at 0 so output files stay byte-identical.
  bool timing = false;
};

struct ExperimentConfig {
  std::string env_id;
  EnvConfig env;
  Algorithm algo = Algorithm::kAags;
  AagsConfig aags;
  UctConfig uct;
  int tunnel_corridor_width = 3;
  SweepConfig sweep;
  RunConfig run;

  void validate() const;
};

std::string_view algorithm_name(Algorithm algo);

// Parses the JSON experiment document. Relative layout files resolve
// against `base_dir`.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// The fully resolved configuration as pretty-printed JSON.
std::string config_to_json(const ExperimentConfig& config);

}  // namespace aags::harness
