#pragma once

#include <span>

#include "aags/belief_function.hpp"
#include "aags/evidence.hpp"

namespace aags {

// Lower Choquet expectation: each focal element's mass goes to its
// smallest-valued member; the boundary proposition's mass goes to
// bounds.lower. `values` holds one entry per outcome of `bf`.
double choquet_lower(const BeliefFunction& bf, std::span<const double> values,
                     const ValueBounds& bounds);

// Mirror of choquet_lower with max and bounds.upper.
double choquet_upper(const BeliefFunction& bf, std::span<const double> values,
                     const ValueBounds& bounds);

}  // namespace aags
