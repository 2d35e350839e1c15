#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/eulerprod/explicit_formula.hpp"
#include "eulerlab/lfunction/zeros.hpp"

namespace eulerlab::experiments {

struct ZeroFit {
  double alpha = 0.0;
  double c = 0.0;
  double max_residual = 0.0;
  std::size_t samples = 0;
  std::vector<double> residuals;  // N(gamma_k) - model at each sample

  eulerprod::ZeroDensity density() const { return {alpha, c}; }
};

/// Least squares of N(t) = A t log t + B t through the counting function at
/// each positive zero up to t_max (N(gamma_k) = k, with multiplicity);
/// alpha = pi A, c = B / A.
inline ZeroFit zero_count_fit(const lfunction::ZeroList& zeros, double t_max) {
  std::vector<double> t, n;
  double count = 0.0;
  for (const auto& z : zeros.positive_upto(t_max)) {
    count += z.multiplicity;
    t.push_back(z.gamma);
    n.push_back(count);
  }
  if (t.size() < 10) throw input_error("zero_count_fit: need at least 10 zeros below t_max");
  double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double f1 = t[i] * std::log(t[i]);
    const double f2 = t[i];
    s11 += f1 * f1;
    s12 += f1 * f2;
    s22 += f2 * f2;
    r1 += f1 * n[i];
    r2 += f2 * n[i];
  }
  const double det = s11 * s22 - s12 * s12;
  if (!(std::abs(det) > 0.0)) throw numerical_error("zero_count_fit: singular normal equations");
  const double a = (r1 * s22 - r2 * s12) / det;
  const double b = (s11 * r2 - s12 * r1) / det;
  ZeroFit out;
  out.alpha = std::numbers::pi * a;
  out.c = b / a;
  out.samples = t.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double res = n[i] - (a * t[i] * std::log(t[i]) + b * t[i]);
    out.residuals.push_back(res);
    out.max_residual = std::max(out.max_residual, std::abs(res));
  }
  return out;
}

}  // namespace eulerlab::experiments
