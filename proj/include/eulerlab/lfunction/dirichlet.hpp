#pragma once

#include <cstdint>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/errors.hpp"

namespace eulerlab::lfunction {

/// Coefficients a_n of L(E, s) = sum a_n n^-s for 1 <= n <= n_max.
struct DirichletCoeffs {
  std::uint64_t n_max = 0;
  std::vector<std::int64_t> a;  // a[0] unused

  std::int64_t operator[](std::uint64_t n) const { return a[n]; }
};

/// Expands the Euler product: a_{p^k} from the Hecke recurrence at good p
/// and a_p^k at bad p, then a_{mn} = a_m a_n for coprime m, n. Factorisations
/// come from a linear sieve that records the full power of the smallest prime.
inline DirichletCoeffs dirichlet_coeffs(const curves::CurveModel& model, const curves::ApTable& table,
                                        std::uint64_t n_max) {
  if (n_max < 1) throw input_error("dirichlet_coeffs: n_max must be positive");
  if (n_max > (std::uint64_t{1} << 31)) throw input_error("dirichlet_coeffs: n_max exceeds 2^31");
  if (table.curve().ainvs() != model.ainvs()) throw input_error("dirichlet_coeffs: a_p table belongs to another curve");
  if (n_max >= 2) table.require_coverage(static_cast<double>(n_max));

  const std::size_t n = n_max + 1;
  std::vector<std::uint32_t> spf(n, 0);        // smallest prime factor
  std::vector<std::uint32_t> prime_part(n, 0);  // largest power of spf dividing the index
  std::vector<std::uint32_t> primes;
  DirichletCoeffs out{n_max, std::vector<std::int64_t>(n, 0)};
  auto& a = out.a;
  if (n_max >= 1) a[1] = 1;

  std::size_t next_entry = 0;
  for (std::uint64_t m = 2; m <= n_max; ++m) {
    if (spf[m] == 0) {
      spf[m] = static_cast<std::uint32_t>(m);
      prime_part[m] = static_cast<std::uint32_t>(m);
      primes.push_back(static_cast<std::uint32_t>(m));
      const auto& e = table.entries()[next_entry++];
      if (e.p != m) throw input_error("dirichlet_coeffs: a_p table is missing p=" + std::to_string(m));
      a[m] = e.ap;
    } else if (prime_part[m] == m) {
      const std::uint64_t p = spf[m];
      const std::int64_t ap = a[p];
      a[m] = model.is_bad(p) ? ap * a[m / p] : ap * a[m / p] - static_cast<std::int64_t>(p) * a[m / p / p];
    } else {
      a[m] = a[prime_part[m]] * a[m / prime_part[m]];
    }
    for (const std::uint32_t q : primes) {
      const std::uint64_t mq = m * q;
      if (q > spf[m] || mq > n_max) break;
      spf[mq] = q;
      prime_part[mq] = q == spf[m] ? prime_part[m] * q : q;
    }
  }
  return out;
}

}  // namespace eulerlab::lfunction
