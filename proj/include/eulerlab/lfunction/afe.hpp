#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/lfunction/dirichlet.hpp"
#include "eulerlab/numerics/compensated_sum.hpp"
#include "eulerlab/numerics/special_functions.hpp"

namespace eulerlab::lfunction {

using numerics::cplx;

inline constexpr double default_afe_eps = 1e-15;
inline constexpr double default_c_cut = 3.0;

/// Coefficients needed by lambda_afe: ceil(sqrt(N)/(2 pi) * log(1/eps) * c_cut).
inline std::uint64_t required_terms(std::uint64_t conductor, double eps = default_afe_eps,
                                    double c_cut = default_c_cut) {
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("required_terms: eps must lie in (0, 1)");
  const double scale = std::sqrt(static_cast<double>(conductor)) / (2.0 * std::numbers::pi);
  return static_cast<std::uint64_t>(std::ceil(scale * std::log(1.0 / eps) * c_cut));
}

struct LambdaValue {
  cplx value;
  double truncation_bound = 0.0;  // bound on the discarded tail
  double magnitude = 0.0;         // sum of |terms| kept, for rounding estimates
  std::uint64_t terms = 0;
};

namespace detail {

// With x = c n, c = 2 pi / sqrt(N), each bracket of the AFE is at most
// 4 e^-x / x once x >= 2 (max(sigma, 2 - sigma) - 1), and |a_n| <= d(n) sqrt(n) <= 2n,
// so the tail beyond M is at most (8/c) e^{-c(M+1)} / (1 - e^-c).
inline double afe_tail_bound(double c, std::uint64_t m) {
  return 8.0 / c * std::exp(-c * static_cast<double>(m + 1)) / -std::expm1(-c);
}

inline std::uint64_t afe_terms_for(double c, double sigma, double eps) {
  const double edge = std::max(sigma, 2.0 - sigma) - 1.0;
  const auto floor_terms = static_cast<std::uint64_t>(std::ceil(std::max(0.0, 2.0 * edge) / c));
  const double need = (std::log(8.0 / (c * -std::expm1(-c))) + std::log(1.0 / eps)) / c;
  return std::max<std::uint64_t>({1, floor_terms, static_cast<std::uint64_t>(std::ceil(std::max(0.0, need)))});
}

}  // namespace detail

/// Lambda(E, s) = N^{s/2} (2 pi)^{-s} Gamma(s) L(E, s) through the
/// incomplete-gamma approximate functional equation, for -1 <= Re(s) <= 3.
inline LambdaValue lambda_afe(const curves::CurveModel& model, cplx s, const DirichletCoeffs& coeffs,
                              double eps = default_afe_eps) {
  if (!(s.real() >= -1.0 && s.real() <= 3.0)) throw input_error("lambda_afe: Re(s) must lie in [-1, 3]");
  if (!(eps > 0.0 && eps < 1.0)) throw input_error("lambda_afe: eps must lie in (0, 1)");
  const std::uint64_t required = required_terms(model.conductor(), eps);
  if (coeffs.n_max < required) {
    throw input_error("lambda_afe: need Dirichlet coefficients up to n_max=" + std::to_string(required) + ", have " +
                      std::to_string(coeffs.n_max));
  }
  const double sqrt_n = std::sqrt(static_cast<double>(model.conductor()));
  const double c = 2.0 * std::numbers::pi / sqrt_n;
  const double log_scale = std::log(sqrt_n / (2.0 * std::numbers::pi));
  const cplx s2 = 2.0 - s;
  const cplx pre1 = std::exp(s * log_scale);   // N^{s/2} (2 pi)^{-s}
  const cplx pre2 = std::exp(s2 * log_scale);  // N^{(2-s)/2} (2 pi)^{s-2}
  const double w = model.root_number();

  const std::uint64_t m = std::min(coeffs.n_max, detail::afe_terms_for(c, s.real(), eps));
  numerics::compensated_sum<cplx> acc;
  double magnitude = 0.0;
  for (std::uint64_t n = 1; n <= m; ++n) {
    const std::int64_t an = coeffs[n];
    if (an == 0) continue;
    const double x = c * static_cast<double>(n);
    const double log_n = std::log(static_cast<double>(n));
    const cplx t1 = std::exp(-s * log_n) * pre1 * numerics::upper_incomplete_gamma(s, x);
    const cplx t2 = w * std::exp(-s2 * log_n) * pre2 * numerics::upper_incomplete_gamma(s2, x);
    const cplx term = static_cast<double>(an) * (t1 + t2);
    acc += term;
    magnitude += std::abs(static_cast<double>(an) * t1) + std::abs(static_cast<double>(an) * t2);
  }
  return {acc.value(), detail::afe_tail_bound(c, m), magnitude, m};
}

/// L(E, s) = Lambda(E, s) (2 pi)^s / (N^{s/2} Gamma(s)).
inline cplx l_value(const curves::CurveModel& model, cplx s, const DirichletCoeffs& coeffs,
                    double eps = default_afe_eps) {
  const cplx lambda = lambda_afe(model, s, coeffs, eps).value;
  const double log_scale = std::log(std::sqrt(static_cast<double>(model.conductor())) / (2.0 * std::numbers::pi));
  return lambda / (std::exp(s * log_scale) * numerics::gamma(s));
}

/// Curve plus enough Dirichlet coefficients for lambda_afe at the given eps.
class LFunction {
 public:
  LFunction(curves::CurveModel model, const curves::ApTable& table, double eps = default_afe_eps)
      : model_(std::move(model)),
        eps_(eps),
        coeffs_(dirichlet_coeffs(model_, table, required_terms(model_.conductor(), eps))) {}

  const curves::CurveModel& model() const { return model_; }
  const DirichletCoeffs& coeffs() const { return coeffs_; }
  double eps() const { return eps_; }

  LambdaValue lambda(cplx s) const { return lambda_afe(model_, s, coeffs_, eps_); }
  cplx operator()(cplx s) const { return l_value(model_, s, coeffs_, eps_); }

 private:
  curves::CurveModel model_;
  double eps_;
  DirichletCoeffs coeffs_;
};

}  // namespace eulerlab::lfunction
