#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>

#include "eulerlab/errors.hpp"

namespace eulerlab::numerics {

using cplx = std::complex<double>;

inline constexpr double euler_gamma = std::numbers::egamma;

namespace detail {

// Lanczos approximation, g = 671/128, 14 terms; relative error ~1e-15 for Re(z) > 0.
inline cplx log_gamma_lanczos(cplx z) {
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  cplx y = z;
  cplx tmp = z + 5.24218750000000000;
  tmp = (z + 0.5) * std::log(tmp) - tmp;
  cplx ser = 0.999999999999997092;
  for (double c : cof) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(2.5066282746310005 * ser / z);
}

// phi(z) = (e^z - 1) / z
inline cplx expm1_over_z(cplx z) {
  if (std::abs(z) < 1.0) {
    cplx term = 1.0, sum = 1.0;
    for (int n = 2; n < 60; ++n) {
      term *= z / static_cast<double>(n);
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return (std::exp(z) - 1.0) / z;
}

inline double zeta_int(int k) {
  static constexpr std::array<double, 8> low = {
      1.6449340668482264, 1.2020569031595943, 1.0823232337111382, 1.0369277551433699,
      1.0173430619844491, 1.0083492773819228, 1.0040773561979443, 1.0020083928260822};
  if (k >= 2 && k <= 9) return low[k - 2];
  double s = 0.0;
  for (int n = 40; n >= 1; --n) s += std::pow(static_cast<double>(n), -k);
  return s;
}

// (Gamma(1+s) - 1) / s for |s| < 1/2 via the Taylor series of log Gamma(1+s).
inline cplx gamma1p_minus_one_over_s(cplx s) {
  cplx h = -euler_gamma;
  cplx pw = 1.0;  // s^(k-1)
  for (int k = 2; k < 64; ++k) {
    pw *= s;
    const cplx term = ((k % 2 == 0) ? 1.0 : -1.0) * zeta_int(k) * pw / static_cast<double>(k);
    h += term;
    if (std::abs(term) < 1e-18) break;
  }
  return h * expm1_over_z(s * h);
}

inline std::optional<cplx> gamma_upper_continued_fraction(cplx s, double x, int max_iter) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 2.5e-16;
  cplx b = x + 1.0 - s;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i <= max_iter; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return std::exp(s * std::log(x) - x) * h;
  }
  return std::nullopt;
}

// gamma(s, x) = x^s e^-x sum_n x^n / (s (s+1) ... (s+n))
inline cplx gamma_lower_series(cplx s, double x) {
  cplx term = 1.0 / s;
  cplx sum = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + static_cast<double>(n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum * std::exp(s * std::log(x) - x);
}

// Gamma(s, x) for |s| < 1/2, x < 3/2, without the pole cancellation at s = 0.
inline cplx gamma_upper_small_s(cplx s, double x) {
  const double lx = std::log(x);
  const cplx a = gamma1p_minus_one_over_s(s);
  const cplx b = lx * expm1_over_z(s * lx);
  cplx term = 1.0;  // (-x)^n / n!
  cplx tail = 0.0;
  for (int n = 1; n < 200; ++n) {
    term *= -x / static_cast<double>(n);
    const cplx t = term / (s + static_cast<double>(n));
    tail += t;
    if (std::abs(t) < 1e-18) break;
  }
  return a - b - std::exp(s * lx) * tail;
}

}  // namespace detail

inline cplx log_gamma(cplx z) {
  if (z.real() >= 0.5) return detail::log_gamma_lanczos(z);
  constexpr double pi = std::numbers::pi;
  return std::log(pi / std::sin(pi * z)) - detail::log_gamma_lanczos(1.0 - z);
}

inline cplx gamma(cplx z) {
  if (z.real() >= 0.5) return std::exp(detail::log_gamma_lanczos(z));
  constexpr double pi = std::numbers::pi;
  return pi / (std::sin(pi * z) * std::exp(detail::log_gamma_lanczos(1.0 - z)));
}

/// Upper incomplete gamma Gamma(s, x) = int_x^inf t^(s-1) e^-t dt for
/// -2 < Re(s) < 10, x > 0. Continued fraction for x >= Re(s) + 1; below that
/// Gamma(s) - gamma(s, x), with the recurrence
/// Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s near the non-positive integers.
inline cplx upper_incomplete_gamma(cplx s, double x) {
  if (!(x > 0.0)) throw input_error("upper_incomplete_gamma: x must be positive");
  if (!(s.real() > -2.0 && s.real() < 10.0)) {
    throw input_error("upper_incomplete_gamma: Re(s) outside (-2, 10)");
  }
  if (x >= s.real() + 1.0) {
    if (auto cf = detail::gamma_upper_continued_fraction(s, x, 20000)) return *cf;
  }
  if (std::abs(s) < 0.5) return detail::gamma_upper_small_s(s, x);
  if (s.real() < 0.5 && std::abs(s.imag()) < 0.5) {
    return (upper_incomplete_gamma(s + 1.0, x) - std::exp(s * std::log(x) - x)) / s;
  }
  return gamma(s) - detail::gamma_lower_series(s, x);
}

inline double upper_incomplete_gamma(double s, double x) {
  return upper_incomplete_gamma(cplx{s, 0.0}, x).real();
}

/// E1(x) = int_x^inf e^-t / t dt, x > 0.
inline double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw input_error("exp_integral_e1: x must be positive");
  if (x <= 1.0) {
    double term = 1.0, sum = 0.0;
    for (int n = 1; n < 200; ++n) {
      term *= -x / n;
      const double t = term / n;
      sum += t;
      if (std::abs(t) < 1e-17 * std::abs(sum)) break;
    }
    return -euler_gamma - std::log(x) - sum;
  }
  constexpr double tiny = 1e-300;
  double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 10000; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

/// Principal value Li(e^w) = int_0^(e^w) dt / log t for real w < 0, i.e.
/// gamma + log|w| + sum_{n>=1} w^n / (n! n). For |w| > 2 the series cancels
/// badly and Li(e^w) = -E1(-w) is used instead.
inline double pv_li_exp(double w, double rel_tol = 1e-16) {
  if (w == 0.0) throw domain_error("pv_li_exp: Li diverges at x = 1 (w = 0)");
  if (!(w < 0.0)) throw input_error("pv_li_exp: only w < 0 is supported");
  if (w < -2.0) return -exp_integral_e1(-w);
  double term = 1.0;  // w^n / n!
  double sum = 0.0;
  for (int n = 1; n < 200; ++n) {
    term *= w / n;
    const double t = term / n;
    sum += t;
    const double running = std::abs(euler_gamma + std::log(-w) + sum);
    if (std::abs(t) <= rel_tol * running) break;
  }
  return euler_gamma + std::log(-w) + sum;
}

}  // namespace eulerlab::numerics
