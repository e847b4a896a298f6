#include "aags/sample_complexity.hpp"

#include <cmath>

namespace aags {
namespace {

constexpr double kDeltaLow = 1.0 / 15.0;    // numerator log vanishes
constexpr double kEpsilonPole = 5.0 / 9.0;  // denominator log vanishes

double confidence_term(double delta) {
  return std::log(1.0 / (1.25 * (1.0 - delta) - 1.0 / 6.0));
}

double accuracy_term(double epsilon) {
  const double log_term = -std::log(1.0 / (1.5 * (1.0 - epsilon) + 1.0 / 3.0));
  return epsilon * log_term * log_term;
}

double find_peak() {
  // d/de [e * ln(g)^2] = 0 with g = 11/6 - 1.5 e  <=>  ln(g) = 3 e / g.
  double lo = 0.0;
  double hi = kEpsilonPole;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double g = 11.0 / 6.0 - 1.5 * mid;
    if (std::log(g) - 3.0 * mid / g > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void check_confidence(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw DomainError("delta must lie in (0, 1), got " + std::to_string(delta));
  }
  if (!(1.25 * (1.0 - delta) - 1.0 / 6.0 > 0.0)) {
    throw DomainError("1.25(1 - delta) - 1/6 must be positive (delta < 13/15), got delta = " +
                      std::to_string(delta));
  }
  if (!(delta > kDeltaLow)) {
    throw DomainError(
        "ln(1 / (1.25(1 - delta) - 1/6)) must be positive for a positive sample count "
        "(delta > 1/15), got delta = " +
        std::to_string(delta));
  }
}

double required_samples(const ConfidenceSpec& spec) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw DomainError("epsilon must lie in (0, 1), got " + std::to_string(spec.epsilon));
  }
  check_confidence(spec.delta);
  const double denominator = accuracy_term(spec.epsilon);
  if (denominator == 0.0 || !std::isfinite(denominator)) {
    throw DomainError("ln(1.5(1 - epsilon) + 1/3) must be nonzero (epsilon != 5/9)");
  }
  return confidence_term(spec.delta) / denominator;
}

double accuracy_peak() {
  static const double peak = find_peak();
  return peak;
}

double accuracy_for(double delta, std::uint64_t samples) {
  if (samples == 0) throw DomainError("accuracy_for needs at least one sample");
  check_confidence(delta);
  const double n = static_cast<double>(samples);
  const double peak = accuracy_peak();
  if (n < required_samples({peak, delta})) return 1.0;
  if (n >= required_samples({kMinAccuracy, delta})) return kMinAccuracy;

  // t(lo) > n >= t(hi), t decreasing on the branch.
  double lo = kMinAccuracy;
  double hi = peak;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (required_samples({mid, delta}) > n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

}  // namespace aags
