#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/eulerprod/prime_sums.hpp"

namespace eulerlab::experiments {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Where |psi_E(x)| > lambda x (log log x)^2 for e^e < x <= x_max.
struct ExcursionReport {
  double lambda = 1.0;
  double x_max = 0.0;
  std::vector<Interval> intervals;
  double total_log_measure = 0.0;  // Sum log(hi / lo)
};

namespace detail {

// x (log log x)^2 for x > e.
inline double excursion_bound(double x) {
  const double ll = std::log(std::log(x));
  return x * ll * ll;
}

// Solves x (log log x)^2 = y for x > e^e by bisection on log x.
inline double excursion_crossing(double y) {
  double lo = std::exp(1.0), hi = 60.0;  // bounds on log x
  while (excursion_bound(std::exp(hi)) < y) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excursion_bound(std::exp(mid)) < y ? lo : hi) = mid;
  }
  return std::exp(hi);
}

}  // namespace detail

/// Exact scan of the step function psi_E over its jump points. On a step
/// [n_i, n_{i+1}) with value v the bound increases in x, so the excursion
/// part is [n_i, min(n_{i+1}, x*)) with x* (log log x*)^2 = |v| / lambda.
inline ExcursionReport psi_excursion_monitor(const CurveModel& model, const ApTable& table, double x_max,
                                             double lambda = 1.0) {
  if (!(x_max >= 100.0)) throw input_error("psi_excursion_monitor: x_max must be >= 100");
  if (!(lambda > 0.0)) throw input_error("psi_excursion_monitor: lambda must be positive");
  ExcursionReport out;
  out.lambda = lambda;
  out.x_max = x_max;
  if (std::isinf(lambda)) return out;

  const double start = std::exp(std::numbers::e);
  const auto steps = eulerprod::psi_steps(model, table, x_max);
  // steps as (left end, value) pairs, beginning at e^e
  std::vector<Interval> found;
  double value = 0.0;
  std::size_t i = 0;
  for (; i < steps.size() && steps[i].x <= start; ++i) value = steps[i].psi;
  double left = start;
  for (;; ++i) {
    const double right = i < steps.size() ? steps[i].x : x_max;
    if (right > left) {
      const double y = std::abs(value) / lambda;
      if (y > detail::excursion_bound(left)) {
        const double end = std::min(right, detail::excursion_crossing(y));
        if (end > left) {
          if (!found.empty() && found.back().hi == left) {
            found.back().hi = end;
          } else {
            found.push_back({left, end});
          }
        }
      }
    }
    if (i >= steps.size()) break;
    value = steps[i].psi;
    left = steps[i].x;
  }
  out.intervals = std::move(found);
  for (const auto& iv : out.intervals) out.total_log_measure += std::log(iv.hi / iv.lo);
  return out;
}

}  // namespace eulerlab::experiments
