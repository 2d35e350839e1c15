#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/curves/frobenius.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/numerics/compensated_sum.hpp"
#include "eulerlab/numerics/parallel.hpp"

namespace eulerlab::eulerprod {

using curves::ApTable;
using curves::CurveModel;
using curves::ReductionData;

inline constexpr std::size_t prime_block = 4096;

namespace detail {

inline bool is_integer(double x) { return std::floor(x) == x; }

inline void check_table(const CurveModel& model, const ApTable& table) {
  if (table.curve().ainvs() != model.ainvs()) throw input_error("a_p table belongs to another curve");
}

// Sum of term(entry) over the table rows with p <= x. Rows are cut into
// fixed blocks, each block is summed with compensation, and block totals are
// merged in ascending order, so the result does not depend on `workers`.
template <class Fn>
double prime_sum(const ApTable& table, double x, unsigned workers, Fn&& term) {
  table.require_coverage(x);
  const std::size_t count = table.count_upto(x);
  const std::size_t n_blocks = (count + prime_block - 1) / prime_block;
  std::vector<double> partial(n_blocks, 0.0);
  numerics::for_each_block(n_blocks, workers, [&](std::size_t b) {
    numerics::compensated_sum<double> acc;
    const std::size_t hi = std::min(count, (b + 1) * prime_block);
    for (std::size_t i = b * prime_block; i < hi; ++i) acc += term(table.entries()[i]);
    partial[b] = acc.value();
  });
  return numerics::compensated_total(partial);
}

// t_k for good p, a_p^k for bad p, exact while p^k fits comfortably.
inline double power_trace(const ReductionData& e, int k) {
  if (e.kind != curves::ReductionKind::good) return std::pow(static_cast<double>(e.ap), k);
  return curves::frobenius_power_sum_real(e.ap, e.p, k);
}

// Sum over k >= k0 of tr_k log p / p^{ks}, stopped once the geometric bound
// on the remaining terms is below 1e-20.
// Uses t_k / p^{k/2} = 2 cos(k theta) recurrences to stay in range.
inline double power_tail(const ReductionData& e, int k0, double s) {
  const double p = static_cast<double>(e.p);
  const double lp = std::log(p);
  const bool good = e.kind == curves::ReductionKind::good;
  const double ratio = good ? std::pow(p, 0.5 - s) : std::abs(static_cast<double>(e.ap)) * std::pow(p, -s);
  if (ratio == 0.0) return 0.0;
  if (!(ratio < 1.0)) throw domain_error("power_tail: series in k diverges");
  const double x1 = good ? static_cast<double>(e.ap) / std::sqrt(p) : static_cast<double>(e.ap) * std::pow(p, -s);
  double u_prev = 2.0, u = x1;  // good: t_k / p^{k/2}; bad: (a_p p^-s)^k
  double scale = good ? ratio : 1.0;
  double acc = 0.0;
  for (int k = 1; k < 100000; ++k) {
    if (k >= k0) acc += u * scale * lp;
    const double rest = (good ? 2.0 * scale : std::abs(u)) * lp * ratio / (1.0 - ratio);
    if (k >= k0 && rest < 1e-20) break;
    if (good) {
      const double next = x1 * u - u_prev;
      u_prev = u;
      u = next;
      scale *= ratio;
    } else {
      u *= x1;
    }
  }
  return acc;
}

}  // namespace detail

/// b_n: (alpha_p^k + beta_p^k) log p at n = p^k with p good, a_p^k log p with
/// p bad, 0 when n is not a prime power.
inline double bn(const CurveModel& model, const ApTable& table, std::uint64_t n) {
  detail::check_table(model, table);
  if (n < 2) return 0.0;
  table.require_coverage(static_cast<double>(n));
  std::uint64_t p = n;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  int k = 0;
  std::uint64_t m = n;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) return 0.0;
  const auto* e = table.find(p);
  if (!e) throw input_error("bn: a_p table has no entry for p=" + std::to_string(p));
  return detail::power_trace(*e, k) * std::log(static_cast<double>(p));
}

/// Sum_{n <= x} b_n n^-s, with the term at n = x halved when x is an integer.
inline double bn_partial_sum(const CurveModel& model, const ApTable& table, double x, double s,
                             unsigned workers = 1) {
  detail::check_table(model, table);
  if (!(x >= 1.0)) throw input_error("bn_partial_sum: x must be >= 1");
  const bool integral = detail::is_integer(x);
  return detail::prime_sum(table, x, workers, [&](const ReductionData& e) {
    const double p = static_cast<double>(e.p);
    const double lp = std::log(p);
    double acc = 0.0, pk = p;
    for (int k = 1; pk <= x; ++k, pk *= p) {
      const double weight = (integral && pk == x) ? 0.5 : 1.0;
      acc += weight * detail::power_trace(e, k) * lp * std::exp(-s * k * lp);
    }
    return acc;
  });
}

namespace detail {

// -log of the Euler factor at p; at s = 1 this is log(p / N_p) for both kinds.
inline double neg_log_factor(const ReductionData& e, double s) {
  const double p = static_cast<double>(e.p);
  double arg;
  if (s == 1.0) {
    arg = (static_cast<double>(e.np) - p) / p;
  } else if (e.kind == curves::ReductionKind::good) {
    arg = -static_cast<double>(e.ap) * std::pow(p, -s) + std::pow(p, 1.0 - 2.0 * s);
  } else {
    arg = -static_cast<double>(e.ap) * std::pow(p, -s);
  }
  if (!(arg > -1.0)) throw domain_error("Euler factor vanishes or is negative at p=" + std::to_string(e.p));
  return -std::log1p(arg);
}

}  // namespace detail

/// log of prod_{p <= x} (Euler factor at p)^-1 for real s >= 1.
inline double log_partial_euler_product(const CurveModel& model, const ApTable& table, double x, double s,
                                        unsigned workers = 1) {
  detail::check_table(model, table);
  if (!(s >= 1.0)) throw input_error("log_partial_euler_product: s must be >= 1");
  if (x < 2.0) return 0.0;
  return detail::prime_sum(table, x, workers, [s](const ReductionData& e) { return detail::neg_log_factor(e, s); });
}

/// log prod_{p <= x} N_p / p.
inline double np_product_log(const CurveModel& model, const ApTable& table, double x, unsigned workers = 1) {
  detail::check_table(model, table);
  if (x < 2.0) return 0.0;
  return detail::prime_sum(table, x, workers, [](const ReductionData& e) {
    if (e.np == 0) throw domain_error("N_p = 0 at p=" + std::to_string(e.p));
    return -detail::neg_log_factor(e, 1.0);
  });
}

/// Sum_{n <= x} c_n, c_{p^k} = -(alpha^k + beta^k) / (k p^k), -a_p^k / (k p^k) at bad p.
inline double cn_partial_sum(const CurveModel& model, const ApTable& table, double x, unsigned workers = 1) {
  detail::check_table(model, table);
  if (x < 2.0) return 0.0;
  return detail::prime_sum(table, x, workers, [x](const ReductionData& e) {
    const double p = static_cast<double>(e.p);
    double acc = 0.0, pk = p;
    for (int k = 1; pk <= x; ++k, pk *= p) acc -= detail::power_trace(e, k) / (k * pk);
    return acc;
  });
}

/// U_s(x) = Sum_{sqrt(x) < p <= x, p good} (a_p^2 - 2p) / (2 p^{2s}).
inline double u_term(const CurveModel& model, const ApTable& table, double x, double s, unsigned workers = 1) {
  detail::check_table(model, table);
  if (x < 2.0) return 0.0;
  const double root = std::sqrt(x);
  return detail::prime_sum(table, x, workers, [root, s](const ReductionData& e) {
    const double p = static_cast<double>(e.p);
    if (p <= root || e.kind != curves::ReductionKind::good) return 0.0;
    const double ap = static_cast<double>(e.ap);
    return (ap * ap - 2.0 * p) / (2.0 * std::pow(p, 2.0 * s));
  });
}

/// The series for d/ds log_partial_euler_product(x, s):
/// -[bn_partial_sum(x, s) + Sum_{sqrt(x) < p <= x, good} (a_p^2 - 2p) log p / p^{2s}
///   + Sum_{k >= 3, x^{1/k} < p <= x, good} t_k log p / p^{ks} + bad-prime k >= 2 terms with p^k > x].
/// The k sums run until they converge rather than stopping at log x / log 2.
inline double euler_product_log_derivative(const CurveModel& model, const ApTable& table, double x, double s,
                                           unsigned workers = 1) {
  if (!(s > 1.0)) throw input_error("euler_product_log_derivative: s must be > 1");
  if (x < 2.0) return 0.0;
  double head = bn_partial_sum(model, table, x, s, workers);
  if (detail::is_integer(x)) head += 0.5 * bn(model, table, static_cast<std::uint64_t>(x)) * std::pow(x, -s);
  const double rest = detail::prime_sum(table, x, workers, [x, s](const ReductionData& e) {
    // first k with p^k > x
    const double p = static_cast<double>(e.p);
    int k = 1;
    for (double pk = p; pk <= x; pk *= p) ++k;
    return detail::power_tail(e, k, s);
  });
  return -(head + rest);
}

/// psi_E at x with the normalised ratio |psi| / (x (log log x)^2) for x > e^e.
struct PsiPoint {
  double x = 0.0;
  double psi = 0.0;
  std::optional<double> bound_ratio;
};

inline std::optional<double> psi_bound_ratio(double x, double psi) {
  if (!(x > std::exp(std::exp(1.0)))) return std::nullopt;
  const double ll = std::log(std::log(x));
  return std::abs(psi) / (x * ll * ll);
}

/// Jump points of psi_E up to x_max: every prime power p^k <= x_max with p
/// good, ascending, with the value of psi_E just after the jump.
inline std::vector<PsiPoint> psi_steps(const CurveModel& model, const ApTable& table, double x_max) {
  detail::check_table(model, table);
  table.require_coverage(x_max);
  struct Jump {
    double n;
    double b;
  };
  std::vector<Jump> jumps;
  const std::size_t count = table.count_upto(x_max);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& e = table.entries()[i];
    if (e.kind != curves::ReductionKind::good) continue;
    const double p = static_cast<double>(e.p);
    const double lp = std::log(p);
    double pk = p;
    for (int k = 1; pk <= x_max; ++k, pk *= p) jumps.push_back({pk, detail::power_trace(e, k) * lp});
  }
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.n < b.n; });
  std::vector<PsiPoint> out;
  out.reserve(jumps.size());
  numerics::compensated_sum<double> acc;
  for (const auto& j : jumps) {
    acc += j.b;
    const double v = acc.value();
    out.push_back({j.n, v, psi_bound_ratio(j.n, v)});
  }
  return out;
}

/// psi_E(x) = Sum_{p^k <= x, p good} (alpha_p^k + beta_p^k) log p, summed in
/// ascending p^k as in psi_steps.
inline PsiPoint psi_e(const CurveModel& model, const ApTable& table, double x) {
  if (!(x >= 1.0)) throw input_error("psi_e: x must be >= 1");
  const auto steps = psi_steps(model, table, x);
  const double v = steps.empty() ? 0.0 : steps.back().psi;
  return {x, v, psi_bound_ratio(x, v)};
}

}  // namespace eulerlab::eulerprod
