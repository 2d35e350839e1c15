#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/eulerprod/prime_sums.hpp"
#include "eulerlab/lfunction/afe.hpp"
#include "eulerlab/lfunction/special_values.hpp"
#include "eulerlab/lfunction/zeros.hpp"
#include "eulerlab/numerics/compensated_sum.hpp"
#include "eulerlab/numerics/parallel.hpp"
#include "eulerlab/numerics/quadrature.hpp"
#include "eulerlab/numerics/special_functions.hpp"

namespace eulerlab::eulerprod {

using numerics::cplx;

/// Constant in err_bound = kappa log x / x^{1/6}; empirical.
inline constexpr double default_kappa = 10.0;

struct TailValue {
  double value = 0.0;
  double bound = 0.0;
};

/// Sum_{k=0}^{K} x^{-k-s} / (k + s) and the bound x^{-K-1-s} / ((K+1+s)(1 - 1/x)) on the rest.
inline TailValue trivial_zero_tail(double x, double s, int K) {
  if (!(x > 1.0)) throw input_error("trivial_zero_tail: x must exceed 1");
  if (K < 0) throw input_error("trivial_zero_tail: K must be >= 0");
  if (!(s > 0.0)) throw input_error("trivial_zero_tail: s must be positive");
  numerics::compensated_sum<double> acc;
  for (int k = 0; k <= K; ++k) acc += std::pow(x, -k - s) / (k + s);
  return {acc.value(), std::pow(x, -K - 1 - s) / ((K + 1 + s) * (1.0 - 1.0 / x))};
}

/// Fitted zero density N(t) ~ (alpha / pi) t (log t + c).
struct ZeroDensity {
  double alpha = 1.0;
  double c = 0.0;
};

struct RTerm {
  double value = 0.0;                  // R_s(x) truncated at |gamma| <= T
  std::optional<double> tail_estimate;  // heuristic, needs a ZeroDensity
  std::size_t zeros_used = 0;           // distinct positive ordinates
  bool no_zeros = false;                // warning: nothing to sum
};

namespace detail {

inline cplx zero_ratio(double x, double s, double gamma) {
  // x^{rho - s} / (rho - s), rho = 1 + i gamma
  const double lx = std::log(x);
  return std::exp(cplx{(1.0 - s) * lx, gamma * lx}) / cplx{1.0 - s, gamma};
}

// int_s^inf x^{rho-z} / (rho-z)^2 dz along real z, cut where the integrand
// magnitude x^{1-z} / ((z-1)^2 + gamma^2) drops below 1e-16.
inline cplx zero_integral(double x, double s, double gamma) {
  const double lx = std::log(x);
  const double lg = std::log(std::max(gamma, 1e-8));
  const double z_end = std::max(s + 1.0 / lx, 1.0 + (std::log(1e16) - 2.0 * lg) / lx);
  auto f = [lx, gamma](double z) { return std::exp((1.0 - z) * lx) / std::pow(cplx{1.0 - z, gamma}, 2); };
  const auto q = numerics::adaptive_quad(f, s, z_end, {1e-13, 1e-18, 4000});
  return q.value * std::exp(cplx{0.0, gamma * lx});
}

// Ascending-gamma sum of 2 m Re(f(gamma)) over positive ordinates <= T.
template <class F>
double zero_pair_sum(const lfunction::ZeroList& zeros, double T, unsigned workers, F&& f) {
  const auto list = zeros.positive_upto(T);
  std::vector<double> parts(list.size());
  numerics::for_each_block(list.size(), workers, [&](std::size_t i) {
    parts[i] = 2.0 * list[i].multiplicity * f(list[i].gamma).real();
  });
  return numerics::compensated_total(parts);
}

}  // namespace detail

/// Heuristic size of the zeros above T in R_s(x): 2 x^{1-s} / log x times
/// int_T^inf dN(gamma) / gamma^2 under the fitted density.
inline double r_tail_estimate(const ZeroDensity& d, double x, double s, double T) {
  const double lx = std::log(x);
  return 2.0 * std::pow(x, 1.0 - s) / lx * (d.alpha / std::numbers::pi) * (std::log(T) + d.c + 2.0) / T;
}

/// R_s(x) = (1/log x) Sum_{0<|gamma|<=T} [x^{rho-s}/(rho-s) + int_s^inf x^{rho-z}/(rho-z)^2 dz],
/// gamma and -gamma combined as twice the real part.
inline RTerm r_term(const lfunction::ZeroList& zeros, double x, double s, double T,
                    std::optional<ZeroDensity> density = std::nullopt, unsigned workers = 1) {
  if (!(x > 1.0)) throw input_error("r_term: x must exceed 1");
  if (!(s > 1.0)) throw input_error("r_term: s must exceed 1");
  if (!(T > 0.0)) throw input_error("r_term: T must be positive");
  RTerm out;
  out.zeros_used = zeros.positive_upto(T).size();
  out.no_zeros = out.zeros_used == 0;
  const double lx = std::log(x);
  out.value = detail::zero_pair_sum(zeros, T, workers, [&](double g) {
                return detail::zero_ratio(x, s, g) + detail::zero_integral(x, s, g);
              }) / lx;
  if (density) out.tail_estimate = r_tail_estimate(*density, x, s, T);
  return out;
}

struct ExplicitFormulaResult {
  double lhs = 0.0;            // bn_partial_sum(x, s)
  double pole_term = 0.0;      // -r x^{1-s} / (1-s)
  double log_derivative = 0.0; // -L'/L(E, s)
  double zero_sum = 0.0;       // -Sum_{0<|gamma|<=T} x^{rho-s}/(rho-s)
  double trivial = 0.0;        // Sum_k x^{-k-s}/(k+s)
  double trivial_bound = 0.0;
  double residual = 0.0;       // lhs minus the sum of the four right-hand terms
};

/// Both sides of the explicit formula for Sum_{n<=x} b_n n^-s with the zero
/// sum cut at |gamma| <= T; r is the multiplicity of gamma = 0 in `zeros`.
inline ExplicitFormulaResult explicit_formula_residual(const CurveModel& model, const ApTable& table,
                                                       const lfunction::ZeroList& zeros,
                                                       const lfunction::DirichletCoeffs& coeffs, double x, double s,
                                                       double T, unsigned workers = 1) {
  if (!(x >= 2.0)) throw input_error("explicit_formula_residual: x must be >= 2");
  if (!(s > 1.0 && s <= 3.0)) throw input_error("explicit_formula_residual: s must lie in (1, 3]");
  ExplicitFormulaResult out;
  out.lhs = bn_partial_sum(model, table, x, s, workers);
  out.pole_term = -zeros.r() * std::pow(x, 1.0 - s) / (1.0 - s);
  out.log_derivative = -lfunction::log_derivative(model, s, coeffs);
  out.zero_sum = -detail::zero_pair_sum(zeros, T, workers, [&](double g) { return detail::zero_ratio(x, s, g); });
  int K = 0;
  TailValue tail = trivial_zero_tail(x, s, K);
  while (tail.bound > 1e-17 && K < 1000) tail = trivial_zero_tail(x, s, ++K);
  out.trivial = tail.value;
  out.trivial_bound = tail.bound;
  out.residual = out.lhs - (out.pole_term + out.log_derivative + out.zero_sum + out.trivial);
  return out;
}

/// One row of the term breakdown. total = log_L + li_term + r_term + u_term
/// approximates lhs = log_partial_euler_product(x, s) up to err_bound.
struct TermBreakdown {
  double x = 0.0;
  double s = 0.0;
  double log_L = 0.0;
  double li_term = 0.0;  // -r Li(x^{1-s})
  double r_term = 0.0;   // -R_s(x), truncated at T
  double u_term = 0.0;   // U_s(x)
  double total = 0.0;
  double lhs = 0.0;
  double err_bound = 0.0;            // kappa log x / x^{1/6}
  std::optional<double> r_tail;      // heuristic tail of the zero sum
  double gap() const { return std::abs(lhs - total); }
};

inline TermBreakdown theorem_a_rhs(const CurveModel& model, const ApTable& table,
                                   const lfunction::DirichletCoeffs& coeffs, const lfunction::LSpecialValues& values,
                                   const lfunction::ZeroList& zeros, double x, double s, double T,
                                   std::optional<ZeroDensity> density = std::nullopt, double kappa = default_kappa,
                                   unsigned workers = 1) {
  if (!(x >= 2.0)) throw input_error("theorem_a_rhs: x must be >= 2");
  if (!(s > 1.0 && s <= 1.5)) throw input_error("theorem_a_rhs: s must lie in (1, 1.5]");
  TermBreakdown row;
  row.x = x;
  row.s = s;
  const double l = lfunction::detail::real_l_value(model, s, coeffs, lfunction::default_afe_eps);
  if (!(l > 0.0)) throw domain_error("theorem_a_rhs: L(E, s) is not positive");
  row.log_L = std::log(l);
  row.li_term = values.r == 0 ? 0.0 : -values.r * numerics::pv_li_exp((1.0 - s) * std::log(x));
  const RTerm r = r_term(zeros, x, s, T, density, workers);
  row.r_term = -r.value;
  row.r_tail = r.tail_estimate;
  row.u_term = u_term(model, table, x, s, workers);
  row.total = row.log_L + row.li_term + row.r_term + row.u_term;
  row.lhs = log_partial_euler_product(model, table, x, s, workers);
  row.err_bound = kappa * std::log(x) / std::pow(x, 1.0 / 6.0);
  return row;
}

inline void write_term_breakdown_csv(const std::vector<TermBreakdown>& rows, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "x,s,logL,li_term,r_term,u_term,total,lhs,err_bound\n";
  for (const auto& r : rows) {
    out << r.x << ',' << r.s << ',' << r.log_L << ',' << r.li_term << ',' << r.r_term << ',' << r.u_term << ','
        << r.total << ',' << r.lhs << ',' << r.err_bound << '\n';
  }
  out.precision(old_precision);
}

}  // namespace eulerlab::eulerprod
