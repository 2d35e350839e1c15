#pragma once

#include <cstdint>

#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/errors.hpp"

namespace eulerlab::curves {

inline constexpr int max_power_sum_exponent = 200;

/// t_k = alpha^k + beta^k for the roots of X^2 - a_p X + p, from
/// t_0 = 2, t_1 = a_p, t_k = a_p t_{k-1} - p t_{k-2}. Exact in 128 bits;
/// throws range_error on overflow.
inline wide_int frobenius_power_sum(std::int64_t ap, std::uint64_t p, int k) {
  if (k < 0 || k > max_power_sum_exponent) throw input_error("frobenius_power_sum: k outside [0, 200]");
  if (static_cast<wide_int>(ap) * ap > 4 * static_cast<wide_int>(p)) {
    throw input_error("frobenius_power_sum: |a_p| exceeds 2 sqrt(p)");
  }
  wide_int prev = 2, cur = ap;
  if (k == 0) return prev;
  for (int i = 2; i <= k; ++i) {
    wide_int a, b, next;
    if (__builtin_mul_overflow(static_cast<wide_int>(ap), cur, &a) ||
        __builtin_mul_overflow(static_cast<wide_int>(p), prev, &b) ||
        __builtin_sub_overflow(a, b, &next)) {
      throw range_error("frobenius_power_sum overflows 128 bits");
    }
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Floating t_k for sums; exact whenever |t_k| < 2^53.
inline double frobenius_power_sum_real(std::int64_t ap, std::uint64_t p, int k) {
  return static_cast<double>(frobenius_power_sum(ap, p, k));
}

}  // namespace eulerlab::curves
