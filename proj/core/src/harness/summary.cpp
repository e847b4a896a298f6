#include "aags/harness/summary.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace aags::harness {

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) return {};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

std::vector<SummaryRow> summarize(std::span<const EpisodeRecord> records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  struct Columns {
    std::vector<double> discounted;
    std::vector<double> undiscounted;
    std::vector<double> steps;
    std::size_t reached = 0;
  };
  using Key = std::tuple<std::string, std::string, std::string, long>;
  std::map<Key, Columns> groups;
  for (const EpisodeRecord& r : records) {
    const std::string alpha = r.alpha ? format_double(*r.alpha) : "na";
    Columns& c = groups[{r.env, r.algo, alpha, static_cast<long>(std::floor(r.distance))}];
    c.discounted.push_back(r.discounted_return);
    c.undiscounted.push_back(r.undiscounted_return);
    c.steps.push_back(static_cast<double>(r.steps));
    c.reached += r.reached_goal ? 1 : 0;
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, c] : groups) {
    SummaryRow row;
    std::tie(row.env, row.algo, row.alpha, row.bucket) = key;
    row.count = c.discounted.size();
    row.discounted_return = mean_std(c.discounted);
    row.undiscounted_return = mean_std(c.undiscounted);
    row.steps = mean_std(c.steps);
    row.success_rate = static_cast<double>(c.reached) / static_cast<double>(row.count);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string summary_to_json(std::span<const SummaryRow> rows) {
  nlohmann::json out = nlohmann::json::array();
  auto stat = [](const MeanStd& m) { return nlohmann::json{{"mean", m.mean}, {"stddev", m.stddev}}; };
  for (const SummaryRow& r : rows) {
    out.push_back({{"env", r.env},
                   {"algo", r.algo},
                   {"alpha", r.alpha},
                   {"distance_bucket", r.bucket},
                   {"count", r.count},
                   {"discounted_return", stat(r.discounted_return)},
                   {"undiscounted_return", stat(r.undiscounted_return)},
                   {"steps", stat(r.steps)},
                   {"success_rate", r.success_rate}});
  }
  return out.dump(2) + "\n";
}

std::string summary_to_table(std::span<const SummaryRow> rows) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %-5s %-6s %6s %6s %12s %10s %8s %7s %8s\n", "env", "algo", "alpha",
                "bucket", "count", "disc_return", "disc_std", "steps", "steps_sd", "success");
  out += line;
  for (const SummaryRow& r : rows) {
    std::snprintf(line, sizeof line, "%-8s %-5s %-6s %6ld %6zu %12.4f %10.4f %8.2f %7.2f %8.3f\n", r.env.c_str(),
                  r.algo.c_str(), r.alpha.c_str(), r.bucket, r.count, r.discounted_return.mean,
                  r.discounted_return.stddev, r.steps.mean, r.steps.stddev, r.success_rate);
    out += line;
  }
  return out;
}

}  // namespace aags::harness
