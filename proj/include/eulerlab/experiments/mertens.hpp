#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/eulerprod/prime_sums.hpp"
#include "eulerlab/experiments/bsd.hpp"
#include "eulerlab/numerics/compensated_sum.hpp"

namespace eulerlab::experiments {

/// log(1/sqrt 2), the limit of U_1(x).
inline const double u1_limit = -0.5 * std::log(2.0);

namespace detail {

inline double second_moment_term(const curves::ReductionData& e) {
  if (e.kind != curves::ReductionKind::good) return 0.0;
  const double p = static_cast<double>(e.p);
  const double ap = static_cast<double>(e.ap);
  return (ap * ap - 2.0 * p) / (2.0 * p * p);
}

}  // namespace detail

/// M(x) = Sum_{p<=x, p good} (a_p^2 - 2p) / (2 p^2).
inline double mertens_sum(const CurveModel& model, const ApTable& table, double x, unsigned workers = 1) {
  if (table.curve().ainvs() != model.ainvs()) throw input_error("a_p table belongs to another curve");
  if (x < 2.0) return 0.0;
  return eulerprod::detail::prime_sum(table, x, workers, detail::second_moment_term);
}

/// B-hat(x) = M(x) + (1/2) log log x.
inline double mertens_b_estimate(const CurveModel& model, const ApTable& table, double x, unsigned workers = 1) {
  if (!(x >= 3.0)) throw input_error("mertens_b_estimate: x must be >= 3");
  return mertens_sum(model, table, x, workers) + 0.5 * std::log(std::log(x));
}

struct U1Row {
  double x = 0.0;
  double u1 = 0.0;
  double deviation = 0.0;  // |U_1(x) - log(1/sqrt 2)|
};

inline std::vector<U1Row> u1_limit_check(const CurveModel& model, const ApTable& table,
                                         const std::vector<double>& checkpoints, unsigned workers = 1) {
  std::vector<U1Row> out;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (i > 0 && !(checkpoints[i] > checkpoints[i - 1])) throw input_error("u1_limit_check: checkpoints must increase");
    const double u = eulerprod::u_term(model, table, checkpoints[i], 1.0, workers);
    out.push_back({checkpoints[i], u, std::abs(u - u1_limit)});
  }
  return out;
}

/// Median of |U_1(p) - log(1/sqrt 2)| over primes p in (X/2, X], with
/// U_1(p) = M(p) - M(sqrt p) from one running sum.
inline double u1_block_median(const ApTable& table, double X) {
  table.require_coverage(X);
  std::vector<double> running;
  running.reserve(table.size());
  numerics::compensated_sum<double> acc;
  for (const auto& e : table) {
    acc += detail::second_moment_term(e);
    running.push_back(acc.value());
  }
  auto m_at = [&](double y) {
    const std::size_t n = table.count_upto(y);
    return n == 0 ? 0.0 : running[n - 1];
  };
  std::vector<double> devs;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = static_cast<double>(table.entries()[i].p);
    if (p <= X / 2.0 || p > X) continue;
    devs.push_back(std::abs(running[i] - m_at(std::sqrt(p)) - u1_limit));
  }
  return median(std::move(devs));
}

/// Width (max - min) of Sum_{n<=x} c_n - r log log x over the checkpoints.
inline double goldfeld_band_width(const CurveModel& model, const ApTable& table, int r,
                                  const std::vector<double>& checkpoints, unsigned workers = 1) {
  if (checkpoints.empty()) throw input_error("goldfeld_band_width: no checkpoints");
  double lo = INFINITY, hi = -INFINITY;
  for (double x : checkpoints) {
    const double v = eulerprod::cn_partial_sum(model, table, x, workers) - r * std::log(std::log(x));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace eulerlab::experiments
