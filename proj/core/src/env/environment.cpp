#include "aags/env/environment.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aags::env {

double euclidean(const Cell& a, const Cell& b) {
  return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

StateId Environment::reset(std::uint64_t seed) {
  stream_.reseed(seed);
  return start_state();
}

void Environment::check_action(StateId s, ActionId a) const {
  if (a.value >= num_actions(s)) {
    throw std::invalid_argument(std::string(id()) + ": invalid action " + std::to_string(a.value));
  }
}

}  // namespace aags::env
