#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "aags/harness/runner.hpp"

namespace aags::harness {

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
};

// Aggregate over one (env, algo, alpha, distance bucket) group. Buckets are
// floor(distance).
struct SummaryRow {
  std::string env;
  std::string algo;
  std::string alpha;
  long bucket = 0;
  std::size_t count = 0;
  MeanStd discounted_return;
  MeanStd undiscounted_return;
  MeanStd steps;
  double success_rate = 0.0;
};

MeanStd mean_std(std::span<const double> values);

// Rows sorted by (env, algo, alpha, bucket). Throws std::invalid_argument on
// empty input.
std::vector<SummaryRow> summarize(std::span<const EpisodeRecord> records);

std::string summary_to_json(std::span<const SummaryRow> rows);
std::string summary_to_table(std::span<const SummaryRow> rows);

}  // namespace aags::harness
