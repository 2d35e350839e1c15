#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/numerics/compensated_sum.hpp"
#include "eulerlab/numerics/config.hpp"

namespace eulerlab::numerics {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  std::size_t intervals = 0;
};

struct QuadOptions {
  double rel_tol = default_numeric_config.quad_rel_tol;
  double abs_tol = default_numeric_config.quad_abs_tol;
  std::size_t max_intervals = default_numeric_config.quad_max_intervals;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
  double a, b;
  T value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gauss_kronrod_15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(center);
  T kronrod = fc * kronrod_weights[7];
  T gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kronrod_weights[j];
    if (j % 2 == 1) gauss += sum * gauss_weights[j / 2];
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

template <class T, class F>
QuadResult<T> adaptive_quad_finite(F& f, double a, double b, const QuadOptions& opt) {
  if (!(std::isfinite(a) && std::isfinite(b))) throw input_error("adaptive_quad: bad limits");
  if (a == b) return {T{}, 0.0, 0};

  std::priority_queue<Segment<T>> heap;
  heap.push(gauss_kronrod_15<T>(f, a, b));
  compensated_sum<T> total(heap.top().value);
  double total_err = heap.top().error;

  auto resum = [&heap, &total, &total_err] {
    compensated_sum<T> acc;
    double err = 0.0;
    auto copy = heap;
    for (; !copy.empty(); copy.pop()) {
      acc += copy.top().value;
      err += copy.top().error;
    }
    total = acc;
    total_err = err;
  };

  for (std::size_t iter = 1;; ++iter) {
    if (total_err <= std::max(opt.rel_tol * std::abs(total.value()), opt.abs_tol)) {
      resum();
      if (total_err <= std::max(opt.rel_tol * std::abs(total.value()), opt.abs_tol)) break;
    }
    if (heap.size() >= opt.max_intervals) {
      double partial;
      if constexpr (std::is_floating_point_v<T>) {
        partial = total.value();
      } else {
        partial = std::abs(total.value());
      }
      throw numerical_error("adaptive_quad: interval limit reached before tolerance", partial);
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto left = gauss_kronrod_15<T>(f, worst.a, mid);
    auto right = gauss_kronrod_15<T>(f, mid, worst.b);
    heap.push(left);
    heap.push(right);
    total += left.value;
    total += right.value;
    total -= worst.value;
    total_err += left.error + right.error - worst.error;
    if (iter % 64 == 0) resum();
  }
  return {total.value(), total_err, heap.size()};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod quadrature of f over [a, b]; b may be
/// +infinity, in which case x = a + u / (1 - u) maps the tail onto [0, 1).
/// Stops when the summed error estimate is below max(rel_tol |I|, abs_tol).
template <class F>
auto adaptive_quad(F&& f, double a, double b, QuadOptions opt = {})
    -> QuadResult<std::decay_t<std::invoke_result_t<F&, double>>> {
  using T = std::decay_t<std::invoke_result_t<F&, double>>;
  if (std::isinf(b) && b > 0 && std::isfinite(a)) {
    auto mapped = [&f, a](double u) -> T {
      const double w = 1.0 - u;
      return f(a + u / w) / (w * w);
    };
    return detail::adaptive_quad_finite<T>(mapped, 0.0, 1.0, opt);
  }
  return detail::adaptive_quad_finite<T>(f, a, b, opt);
}

}  // namespace eulerlab::numerics
