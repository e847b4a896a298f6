#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aags/evidence.hpp"
#include "aags/harness/config.hpp"
#include "aags/harness/runner.hpp"
#include "aags/harness/summary.hpp"
#include "aags/planner.hpp"
#include "aags/random.hpp"
#include "aags/sample_complexity.hpp"
#include "aags/choquet.hpp"
#include "aags_oracles/oracles.hpp"

namespace {

using namespace aags;

int oracle_credal() {
  Rng rng(7);
  double worst = 0.0;
  std::printf("%4s %3s %10s %10s %10s %10s\n", "case", "n", "choq_lo", "grid_lo", "choq_hi", "grid_hi");
  for (int c = 0; c < 20; ++c) {
    const std::size_t n = 2 + rng.index(2);
    std::vector<std::uint64_t> counts(n);
    for (auto& k : counts) k = 1 + rng.index(20);
    const double eps = 0.02 + 0.28 * rng.uniform();
    const BeliefFunction bf = dist2belief_with_accuracy(EmpiricalDistribution(counts), eps, 0.0).belief;
    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform();
    const ValueBounds b{0.0, 1.0};
    const auto grid = oracles::credal_grid(bf, values);
    const double lo = choquet_lower(bf, values, b);
    const double hi = choquet_upper(bf, values, b);
    worst = std::max({worst, std::abs(lo - grid.lower), std::abs(hi - grid.upper)});
    std::printf("%4d %3zu %10.6f %10.6f %10.6f %10.6f\n", c, n, lo, grid.lower, hi, grid.upper);
  }
  std::printf("max deviation %.6g\n", worst);
  return 0;
}

int oracle_sample_count() {
  const std::pair<double, double> points[] = {{0.1, 0.1}, {0.05, 0.2}, {0.2, 0.1}, {0.01, 0.5}, {0.3, 0.3}};
  std::printf("%8s %8s %22s %22s\n", "epsilon", "delta", "required_samples", "direct");
  for (const auto& [eps, delta] : points) {
    std::printf("%8.3f %8.3f %22.16g %22.16g\n", eps, delta, required_samples({eps, delta}),
                oracles::direct_sample_count(eps, delta));
  }
  return 0;
}

int oracle_coverage() {
  for (const auto& [eps, delta] : {std::pair{0.1, 0.1}, std::pair{0.2, 0.1}}) {
    const double t = required_samples({eps, delta});
    const double cov = oracles::coverage(4, t, eps, 2000, 11);
    std::printf("epsilon %.2f delta %.2f samples %.0f coverage %.4f target %.4f\n", eps, delta, std::ceil(t), cov,
                1.0 - delta - 0.05);
  }
  return 0;
}

int oracle_chain_values() {
  const auto v = oracles::value_iteration(oracles::chain_mdp(5, 0.9));
  for (std::size_t s = 0; s < v.size(); ++s) std::printf("V(%zu) = %.12f\n", s, v[s]);
  return 0;
}

int oracle_crossover() {
  const std::vector<ActionBounds> bounds = {{0.4, 0.6}, {0.2, 0.9}};
  double crossover = -1.0;
  for (int k = 0; k <= 10000; ++k) {
    const double alpha = k / 10000.0;
    const auto ties = hurwicz_ties(bounds, alpha);
    if (ties.size() == 1 && ties.front() == 1) {
      crossover = alpha;
      break;
    }
  }
  std::printf("arm A (0.4, 0.6), arm B (0.2, 0.9): B preferred from alpha = %.4f\n", crossover);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ambiguity-attitude graph search experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  auto* run = app.add_subcommand("run", "Run an experiment sweep");
  run->add_option("--config", config_path, "Experiment JSON file")->required()->check(CLI::ExistingFile);
  auto* out_opt = run->add_option("--out", out_dir, "Output directory (overrides run.out)");
  auto* seed_opt = run->add_option("--seed", seed, "Master seed (overrides run.seed)");
  run->add_option("--jobs", jobs, "Parallel episode workers")->check(CLI::PositiveNumber);

  std::string in_dir;
  auto* summarize = app.add_subcommand("summarize", "Aggregate records.csv of a finished run");
  summarize->add_option("--in", in_dir, "Run output directory")->required()->check(CLI::ExistingDirectory);

  const std::map<std::string, int (*)()> oracles = {{"credal", oracle_credal},
                                                     {"sample-count", oracle_sample_count},
                                                     {"coverage", oracle_coverage},
                                                     {"chain-values", oracle_chain_values},
                                                     {"crossover", oracle_crossover}};
  std::string oracle_name;
  auto* oracle = app.add_subcommand("oracle", "Run a brute-force reference computation");
  std::vector<std::string> names;
  for (const auto& [name, fn] : oracles) names.push_back(name);
  oracle->add_option("name", oracle_name, "Oracle name")->required()->check(CLI::IsMember(names));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      harness::ExperimentConfig config = harness::load_config(config_path);
      if (*seed_opt) config.run.seed = seed;
      if (*out_opt) config.run.out = out_dir;
      harness::RunOptions options;
      options.jobs = jobs;
      options.out_dir = std::filesystem::path(config.run.out);
      const auto records = harness::run_experiment(config, options);
      std::cout << harness::summary_to_table(harness::summarize(records));
      std::cout << records.size() << " records written to " << config.run.out << "\n";
    } else if (*summarize) {
      const std::filesystem::path dir(in_dir);
      const auto rows = harness::summarize(harness::read_records(dir / "records.csv"));
      std::ofstream(dir / "summary.json", std::ios::binary | std::ios::trunc) << harness::summary_to_json(rows);
      std::cout << harness::summary_to_table(rows);
    } else if (*oracle) {
      return oracles.at(oracle_name)();
    }
  } catch (const harness::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
