#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/eulerprod/prime_sums.hpp"
#include "eulerlab/lfunction/special_values.hpp"
#include "eulerlab/numerics/compensated_sum.hpp"
#include "eulerlab/numerics/special_functions.hpp"

namespace eulerlab::experiments {

using curves::ApTable;
using curves::CurveModel;

struct ConvergenceRow {
  double x = 0.0;
  double observed = 0.0;   // log prod_{p<=x} N_p / p
  double predicted = 0.0;  // log C + r log log x
  double deviation = 0.0;  // observed - predicted
  double s_path = 0.0;     // log_partial_euler_product(x, 1 + 1/x) + observed
};

struct ConvergenceTable {
  std::string label;
  int r = 0;
  double log_c = 0.0;
  std::vector<ConvergenceRow> rows;
};

/// log C with C = r! / L^(r)(E, 1) * sqrt(2) * e^{r gamma}. Throws unless L^(r)(E, 1) > 0.
inline double bsd_log_constant(const lfunction::LSpecialValues& values) {
  if (values.r < 0 || static_cast<std::size_t>(values.r) >= values.derivs.size()) {
    throw input_error("bsd_log_constant: rank has no stored derivative");
  }
  const double lead = values.derivs[values.r];
  if (!(lead > 0.0)) throw domain_error("bsd_log_constant: L^(r)(E, 1) is not positive");
  return std::lgamma(values.r + 1.0) - std::log(lead) + 0.5 * std::log(2.0) + values.r * numerics::euler_gamma;
}

/// Default checkpoint grid: n logarithmically spaced points in [lo, hi].
inline std::vector<double> log_checkpoints(double lo, double hi, int n) {
  if (!(lo >= 3.0 && hi > lo) || n < 2) throw input_error("log_checkpoints: need 3 <= lo < hi and n >= 2");
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  out.back() = hi;
  return out;
}

/// Compares log prod_{p<=x} N_p/p with log C + r log log x at each checkpoint.
/// `rank_override` replaces r in the prediction while C stays fixed.
inline ConvergenceTable bsd_product_scan(const CurveModel& model, const ApTable& table,
                                         const lfunction::LSpecialValues& values, const std::vector<double>& checkpoints,
                                         std::optional<int> rank_override = std::nullopt, unsigned workers = 1) {
  ConvergenceTable out{model.label(), values.r, bsd_log_constant(values), {}};
  const int r = rank_override.value_or(values.r);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    const double x = checkpoints[i];
    if (!(x >= 3.0)) throw input_error("bsd_product_scan: checkpoints must be >= 3");
    if (i > 0 && !(x > checkpoints[i - 1])) throw input_error("bsd_product_scan: checkpoints must increase");
    ConvergenceRow row;
    row.x = x;
    row.observed = eulerprod::np_product_log(model, table, x, workers);
    row.predicted = out.log_c + r * std::log(std::log(x));
    row.deviation = row.observed - row.predicted;
    row.s_path = eulerprod::log_partial_euler_product(model, table, x, 1.0 + 1.0 / x, workers) + row.observed;
    out.rows.push_back(row);
  }
  return out;
}

/// Running log prod_{q<=p} N_q/q at every prime p of the table, ascending.
inline std::vector<double> np_product_log_running(const ApTable& table) {
  std::vector<double> out;
  out.reserve(table.size());
  numerics::compensated_sum<double> acc;
  for (const auto& e : table) {
    acc += std::log1p((static_cast<double>(e.np) - static_cast<double>(e.p)) / static_cast<double>(e.p));
    out.push_back(acc.value());
  }
  return out;
}

inline double median(std::vector<double> v) {
  if (v.empty()) throw input_error("median of an empty set");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  return 0.5 * (*std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)) + hi);
}

/// Median of |log prod_{q<=p} N_q/q - log C - r log log p| over primes p in (X/2, X].
inline double bsd_block_median(const ApTable& table, const lfunction::LSpecialValues& values, double X,
                               std::optional<int> rank_override = std::nullopt) {
  table.require_coverage(X);
  const double log_c = bsd_log_constant(values);
  const int r = rank_override.value_or(values.r);
  const auto running = np_product_log_running(table);
  std::vector<double> devs;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = static_cast<double>(table.entries()[i].p);
    if (p <= X / 2.0 || p > X || p < 3.0) continue;
    devs.push_back(std::abs(running[i] - log_c - r * std::log(std::log(p))));
  }
  return median(std::move(devs));
}

}  // namespace eulerlab::experiments
