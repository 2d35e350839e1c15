#pragma once

#include <cstddef>

namespace eulerlab::numerics {

// Fixed numerical constants. Every calibrated threshold used by an
// acceptance check lives here or in experiments/thresholds.hpp.
struct NumericConfig {
  double series_rel_tol = 1e-16;   // series truncation, relative to the running sum
  double quad_rel_tol = 1e-12;
  double quad_abs_tol = 1e-14;
  std::size_t quad_max_intervals = 4000;
};

inline constexpr NumericConfig default_numeric_config{};

}  // namespace eulerlab::numerics
