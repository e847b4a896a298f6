#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aags {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Accuracy/confidence pair of a fixed-confidence estimate:
// P(|p - p_hat| < epsilon) >= 1 - delta.
struct ConfidenceSpec {
  double epsilon = 0.1;
  double delta = 0.1;
};

// Small enough that the requirement at this accuracy exceeds any 64-bit
// sample count for all but the most permissive deltas.
inline constexpr double kMinAccuracy = 1e-21;

// Empirical sample-complexity relation
//
//            ln( 1 / (1.25 (1 - delta) - 1/6) )
//   t = ---------------------------------------------
//        epsilon * ( -ln( 1 / (1.5 (1 - epsilon) + 1/3) ) )^2
//
// evaluated as written. The relation is only a positive, finite sample count
// for delta in (1/15, 13/15) and epsilon in (0, 1) with epsilon != 5/9; any
// other input throws DomainError naming the violated constraint.
double required_samples(const ConfidenceSpec& spec);

// Accuracy at which the relation is stationary in epsilon (about 0.2116).
// On (0, peak] the sample count is strictly decreasing in epsilon; beyond it
// the relation turns back up towards its pole at epsilon = 5/9.
double accuracy_peak();

// Inverts required_samples in epsilon on its decreasing branch
// [kMinAccuracy, accuracy_peak()] by bisection. Sample counts below the
// branch minimum carry no accuracy guarantee and yield 1; counts beyond the
// requirement at kMinAccuracy yield kMinAccuracy.
double accuracy_for(double delta, std::uint64_t samples);

// Throws DomainError unless delta admits a positive sample requirement.
void check_confidence(double delta);

}  // namespace aags
