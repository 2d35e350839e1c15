#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/lfunction/afe.hpp"

namespace eulerlab::lfunction {

inline constexpr double rank_threshold = 1e-6;
inline constexpr double derivative_step = 1e-2;
inline constexpr double log_derivative_step = 1e-4;
inline constexpr double near_zero_threshold = 1e-10;

/// derivs[k] = L^(k)(E, 1) for k <= k_max, and the analytic rank r.
struct LSpecialValues {
  int r = 0;
  std::vector<double> derivs;

  /// a_r = L^(r)(E, 1) / r!
  double leading_coefficient() const {
    return derivs.at(static_cast<std::size_t>(r)) / std::tgamma(static_cast<double>(r) + 1.0);
  }
};

namespace detail {

// Fornberg's recursion: w[k][j] weights the sample at nodes[j] in the
// order-k derivative at 0.
inline std::vector<std::vector<double>> fd_weights(const std::vector<double>& nodes, int order_max) {
  const int n = static_cast<int>(nodes.size());
  std::vector<std::vector<double>> c(order_max + 1, std::vector<double>(n, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  for (int i = 1; i < n; ++i) {
    double c2 = 1.0;
    const int mn = std::min(i, order_max);
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      for (int k = mn; k >= 0; --k) {
        const double prev_i = k > 0 ? c[k - 1][i - 1] : 0.0;
        if (j == i - 1) c[k][i] = c1 * (k * prev_i - nodes[i - 1] * c[k][i - 1]) / c2;
        const double prev_j = k > 0 ? c[k - 1][j] : 0.0;
        c[k][j] = (nodes[i] * c[k][j] - k * prev_j) / c3;
      }
    }
    c1 = c2;
  }
  return c;
}

inline double real_l_value(const curves::CurveModel& model, double s, const DirichletCoeffs& coeffs, double eps) {
  const cplx v = l_value(model, cplx{s, 0.0}, coeffs, eps);
  if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v.real()))) {
    throw numerical_error("L(E, s) has an imaginary part at real s", std::abs(v.imag()));
  }
  return v.real();
}

}  // namespace detail

/// L^(k)(E, 1) for k <= k_max <= 4 by central differences on s = 1 + j h,
/// |j| <= k_max + 1, h = 0.01 and h / 2, combined by one Richardson step.
/// r is the first k with |L^(k)(1)| > 1e-6.
inline LSpecialValues l_derivatives_at_1(const curves::CurveModel& model, const DirichletCoeffs& coeffs, int k_max = 4,
                                         double eps = default_afe_eps) {
  if (k_max < 0 || k_max > 4) throw input_error("l_derivatives_at_1: k_max must lie in [0, 4]");
  const int m = k_max + 1;
  std::vector<double> nodes;
  for (int j = 0; j <= m; ++j) {
    nodes.push_back(j);
    if (j > 0) nodes.push_back(-j);
  }
  const auto w = detail::fd_weights(nodes, k_max);

  auto differences = [&](double h) {
    std::vector<double> samples(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) samples[i] = detail::real_l_value(model, 1.0 + nodes[i] * h, coeffs, eps);
    std::vector<double> d(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < nodes.size(); ++i) acc += w[k][i] * samples[i];
      d[k] = acc / std::pow(h, k);
    }
    return d;
  };
  const auto coarse = differences(derivative_step);
  const auto fine = differences(derivative_step / 2.0);

  LSpecialValues out;
  out.derivs.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    // leading error term of a (2m+1)-point central stencil is h^p, p even
    const int p = 2 * ((2 * m - k + 2) / 2);
    const double f = std::pow(2.0, p);
    out.derivs[k] = (f * fine[k] - coarse[k]) / (f - 1.0);
  }
  out.derivs[0] = detail::real_l_value(model, 1.0, coeffs, eps);
  out.r = -1;
  for (int k = 0; k <= k_max; ++k) {
    if (std::abs(out.derivs[k]) > rank_threshold) {
      out.r = k;
      break;
    }
  }
  if (out.r < 0) {
    throw rank_undetermined_error("all derivatives of L(E, s) at s=1 up to order " + std::to_string(k_max) +
                                  " are below " + std::to_string(rank_threshold));
  }
  return out;
}

/// L'/L(E, s) at real s by a central difference of log L with step h.
inline double log_derivative(const curves::CurveModel& model, double s, const DirichletCoeffs& coeffs,
                             double h = log_derivative_step, double eps = default_afe_eps) {
  if (!(h > 0.0)) throw input_error("log_derivative: step must be positive");
  const double center = detail::real_l_value(model, s, coeffs, eps);
  if (std::abs(center) < near_zero_threshold) {
    throw near_zero_error("log_derivative: |L(E, s)| is below 1e-10", center);
  }
  const double up = detail::real_l_value(model, s + h, coeffs, eps);
  const double down = detail::real_l_value(model, s - h, coeffs, eps);
  return std::log(std::abs(up / down)) / (2.0 * h);
}

}  // namespace eulerlab::lfunction
