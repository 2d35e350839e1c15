#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/lfunction/afe.hpp"
#include "eulerlab/lfunction/special_values.hpp"
#include "eulerlab/numerics/parallel.hpp"

namespace eulerlab::lfunction {

struct Zero {
  double gamma = 0.0;
  int multiplicity = 1;

  bool operator==(const Zero&) const = default;
};

/// Nontrivial zeros 1 + i gamma with gamma >= 0, ascending; r is the
/// multiplicity at gamma = 0.
class ZeroList {
 public:
  ZeroList() = default;

  explicit ZeroList(std::vector<Zero> zeros) : zeros_(std::move(zeros)) {
    for (std::size_t i = 0; i < zeros_.size(); ++i) {
      if (!(zeros_[i].gamma >= 0.0) || !std::isfinite(zeros_[i].gamma)) throw input_error("ZeroList: ordinates must be finite and >= 0");
      if (zeros_[i].multiplicity < 1) throw input_error("ZeroList: multiplicities must be >= 1");
      if (i > 0 && !(zeros_[i].gamma > zeros_[i - 1].gamma)) throw input_error("ZeroList: ordinates must be strictly ascending");
    }
  }

  /// Builds a list from ordinates where repeated values (the gamma = 0 block
  /// in particular) encode multiplicity.
  static ZeroList from_ordinates(const std::vector<double>& ordinates) {
    std::vector<Zero> zeros;
    for (double g : ordinates) {
      if (!zeros.empty() && g == zeros.back().gamma) {
        ++zeros.back().multiplicity;
      } else {
        if (!zeros.empty() && g < zeros.back().gamma) throw input_error("ZeroList: ordinates must be ascending");
        zeros.push_back({g, 1});
      }
    }
    return ZeroList(std::move(zeros));
  }

  const std::vector<Zero>& zeros() const { return zeros_; }
  bool empty() const { return zeros_.empty(); }
  auto begin() const { return zeros_.begin(); }
  auto end() const { return zeros_.end(); }

  int r() const { return (!zeros_.empty() && zeros_.front().gamma == 0.0) ? zeros_.front().multiplicity : 0; }

  /// Positive ordinates up to T with multiplicity, ascending.
  std::vector<Zero> positive_upto(double t) const {
    std::vector<Zero> out;
    for (const auto& z : zeros_) {
      if (z.gamma > 0.0 && z.gamma <= t) out.push_back(z);
    }
    return out;
  }

  /// Largest ordinate stored, 0 if none.
  double height() const { return zeros_.empty() ? 0.0 : zeros_.back().gamma; }

 private:
  std::vector<Zero> zeros_;
};

struct ZeroScanOptions {
  double step = 0.05;
  double tolerance = 1e-9;
  double precision_margin = 1e-6;  // rounding estimate / typical |Lambda| allowed
  unsigned workers = numerics::default_workers();
};

namespace detail {

// Z(t) = Lambda(1 + it) for w = +1 and Lambda(1 + it) / i for w = -1; real by
// the functional equation. Throws precision_error when the estimated rounding
// error of the AFE is not small against sqrt(N)/(2 pi) |Gamma(1 + it)|.
inline double hardy_z(const curves::CurveModel& model, const DirichletCoeffs& coeffs, double t, double margin,
                      double eps) {
  const LambdaValue v = lambda_afe(model, cplx{1.0, t}, coeffs, eps);
  const double pi_t = std::numbers::pi * t;
  const double gamma_abs = t == 0.0 ? 1.0 : std::sqrt(pi_t / std::sinh(pi_t));
  const double typical = std::sqrt(static_cast<double>(model.conductor())) / (2.0 * std::numbers::pi) * gamma_abs;
  const double rounding = 8.0 * DBL_EPSILON * v.magnitude + v.truncation_bound;
  if (!(rounding <= margin * typical)) {
    throw precision_error("AFE cannot resolve Lambda(1+it) in double precision at t=" + std::to_string(t), t);
  }
  return model.root_number() == 1 ? v.value.real() : v.value.imag();
}

}  // namespace detail

/// Zeros of Lambda on the critical line with 0 < gamma <= t_max by a sign
/// scan of Z(t) at the given step, refined by bisection; gamma = 0 is added
/// with multiplicity `rank`.
inline ZeroList find_zeros(const curves::CurveModel& model, const DirichletCoeffs& coeffs, double t_max, int rank,
                           ZeroScanOptions opt = {}, double eps = default_afe_eps) {
  if (!(t_max > 0.0 && t_max <= 50.0)) throw input_error("find_zeros: t_max must lie in (0, 50]");
  if (rank < 0) throw input_error("find_zeros: rank must be >= 0");
  if (!(opt.step > 0.0 && opt.tolerance > 0.0)) throw input_error("find_zeros: step and tolerance must be positive");

  const auto n_points = static_cast<std::size_t>(std::ceil(t_max / opt.step));
  std::vector<double> t(n_points), z(n_points);
  for (std::size_t i = 0; i < n_points; ++i) t[i] = std::min(t_max, static_cast<double>(i + 1) * opt.step);

  constexpr std::size_t block = 32;
  const std::size_t n_blocks = (n_points + block - 1) / block;
  numerics::for_each_block(n_blocks, opt.workers, [&](std::size_t b) {
    for (std::size_t i = b * block; i < std::min(n_points, (b + 1) * block); ++i) {
      z[i] = detail::hardy_z(model, coeffs, t[i], opt.precision_margin, eps);
    }
  });

  std::vector<std::size_t> brackets;  // sign change in (t[i], t[i+1]], or exact zero at t[i]
  for (std::size_t i = 0; i + 1 < n_points; ++i) {
    if (z[i] == 0.0 || (z[i] < 0.0) != (z[i + 1] < 0.0)) brackets.push_back(i);
  }
  if (n_points > 0 && z.back() == 0.0) brackets.push_back(n_points - 1);

  std::vector<double> found(brackets.size());
  numerics::for_each_block(brackets.size(), opt.workers, [&](std::size_t k) {
    const std::size_t i = brackets[k];
    if (z[i] == 0.0 || i + 1 >= n_points) {
      found[k] = t[i];
      return;
    }
    double lo = t[i], hi = t[i + 1], z_lo = z[i];
    while (hi - lo > opt.tolerance) {
      const double mid = 0.5 * (lo + hi);
      const double z_mid = detail::hardy_z(model, coeffs, mid, opt.precision_margin, eps);
      if (z_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((z_mid < 0.0) == (z_lo < 0.0)) {
        lo = mid;
        z_lo = z_mid;
      } else {
        hi = mid;
      }
    }
    found[k] = 0.5 * (lo + hi);
  });

  std::vector<Zero> zeros;
  if (rank > 0) zeros.push_back({0.0, rank});
  for (double g : found) {
    if (zeros.empty() || g > zeros.back().gamma) zeros.push_back({g, 1});
  }
  return ZeroList(std::move(zeros));
}

/// As above with the multiplicity at gamma = 0 taken from l_derivatives_at_1.
inline ZeroList find_zeros(const curves::CurveModel& model, const DirichletCoeffs& coeffs, double t_max,
                           ZeroScanOptions opt = {}, double eps = default_afe_eps) {
  return find_zeros(model, coeffs, t_max, l_derivatives_at_1(model, coeffs, 4, eps).r, opt, eps);
}

}  // namespace eulerlab::lfunction
