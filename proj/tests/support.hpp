#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/interface/dataset.hpp"
#include "eulerlab/lfunction/afe.hpp"
#include "eulerlab/lfunction/dirichlet.hpp"

#ifndef EULERLAB_FIXTURES
#error "EULERLAB_FIXTURES must point at the fixture directory"
#endif

namespace testing_support {

using namespace eulerlab;

inline std::string fixture_path() { return std::string(EULERLAB_FIXTURES) + "/curves.json"; }

inline const std::vector<interface::CurveRecord>& records() {
  static const auto r = interface::load_dataset(fixture_path());
  return r;
}

inline const interface::CurveRecord& record(const std::string& label) { return interface::find_record(records(), label); }

inline curves::CurveModel model(const std::string& label) { return record(label).model(); }

// a_p tables to 10^5 for all fixture curves, built once.
inline const curves::ApTable& table(const std::string& label) {
  static const std::map<std::string, curves::ApTable> tables = [] {
    std::vector<curves::CurveModel> models;
    for (const auto& r : records()) models.push_back(r.model());
    auto built = curves::ap_tables(models, 100000);
    std::map<std::string, curves::ApTable> out;
    for (std::size_t i = 0; i < models.size(); ++i) out.emplace(models[i].label(), std::move(built[i]));
    return out;
  }();
  return tables.at(label);
}

inline const lfunction::DirichletCoeffs& coeffs(const std::string& label) {
  static std::map<std::string, lfunction::DirichletCoeffs> cache;
  auto it = cache.find(label);
  if (it == cache.end()) {
    const auto m = model(label);
    it = cache.emplace(label, lfunction::dirichlet_coeffs(m, table(label), lfunction::required_terms(m.conductor())))
             .first;
  }
  return it->second;
}

// Composite Simpson on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline std::vector<std::uint64_t> trial_division_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(n);
  }
  return out;
}

// Affine solutions of the long Weierstrass equation over F_p plus infinity,
// singular points included.
inline std::int64_t enumerate_points(const std::array<std::int64_t, 5>& a, std::int64_t p) {
  auto md = [p](std::int64_t v) { return ((v % p) + p) % p; };
  std::int64_t count = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t rhs = md(md(md(x * x) * x) + md(a[1]) * md(x * x) + md(a[3]) * x + md(a[4]));
    for (std::int64_t y = 0; y < p; ++y) {
      const std::int64_t lhs = md(md(y * y) + md(md(a[0]) * md(x * y)) + md(a[2]) * y);
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

}  // namespace testing_support
