#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "eulerlab/errors.hpp"

namespace eulerlab::numerics {

inline constexpr std::uint64_t max_sieve_limit = std::uint64_t{1} << 40;

/// The primes in [lo, hi], ascending.
struct PrimeRange {
  std::uint64_t lo = 2;
  std::uint64_t hi = 2;
  std::vector<std::uint64_t> primes;
};

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

/// Segmented sieve of Eratosthenes over [lo, hi].
inline PrimeRange sieve_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 2 || hi < lo) throw input_error("sieve_range: need 2 <= lo <= hi");
  if (hi > max_sieve_limit) throw input_error("sieve_range: hi exceeds 2^40");

  PrimeRange out{lo, hi, {}};
  const auto base = detail::small_primes(detail::isqrt(hi));
  constexpr std::uint64_t segment = std::uint64_t{1} << 18;
  std::vector<char> mark(segment);

  for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += segment) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + segment - 1);
    std::fill(mark.begin(), mark.end(), 1);
    for (std::uint64_t q : base) {
      if (q * q > seg_hi) break;
      std::uint64_t start = std::max(q * q, (seg_lo + q - 1) / q * q);
      for (std::uint64_t j = start; j <= seg_hi; j += q) mark[j - seg_lo] = 0;
    }
    for (std::uint64_t n = seg_lo; n <= seg_hi; ++n) {
      if (mark[n - seg_lo]) out.primes.push_back(n);
    }
    if (seg_hi == hi) break;
  }
  return out;
}

inline PrimeRange sieve_primes(std::uint64_t limit) {
  if (limit < 2 || limit > max_sieve_limit) {
    throw input_error("sieve_primes: limit must lie in [2, 2^40]");
  }
  return sieve_range(2, limit);
}

}  // namespace eulerlab::numerics
