#pragma once

#include <cstdint>
#include <vector>

#include "eulerlab/errors.hpp"
#include "eulerlab/numerics/sieve.hpp"

namespace eulerlab::numerics {

namespace detail {

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::uint64_t r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline std::uint64_t reduce_mod(std::int64_t a, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  std::int64_t r = a % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

inline void require_odd_prime(std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw input_error("quadratic character needs an odd prime modulus");
}

}  // namespace detail

/// Legendre symbol (a/p): 0 if p | a, +1 on nonzero squares, -1 otherwise.
inline int quadratic_character(std::int64_t a, std::uint64_t p) {
  detail::require_odd_prime(p);
  return detail::jacobi(detail::reduce_mod(a, p), p);
}

/// Fills table[a] = (a/p) for a in [0, p). No primality check; p is trusted.
/// Marks i^2 mod p for 1 <= i <= (p-1)/2 in four interleaved runs, O(p).
inline void fill_character_table(std::uint32_t p, std::vector<std::int8_t>& table) {
  table.assign(p, -1);
  table[0] = 0;
  const std::uint64_t P = p;
  const std::uint64_t half = (P - 1) / 2;
  constexpr unsigned lanes = 4;
  const std::uint64_t len = half / lanes;
  std::uint32_t sq[lanes], step[lanes];  // i^2 and 2i + 1 mod p
  for (unsigned j = 0; j < lanes; ++j) {
    const std::uint64_t i = 1 + j * len;
    sq[j] = static_cast<std::uint32_t>(i * i % P);
    step[j] = static_cast<std::uint32_t>((2 * i + 1) % P);
  }
  for (std::uint64_t n = 0; n < len; ++n) {
    for (unsigned j = 0; j < lanes; ++j) {
      table[sq[j]] = 1;
      std::uint32_t t = sq[j] + step[j];
      sq[j] = t >= p ? t - p : t;
      t = step[j] + 2;
      step[j] = t >= p ? t - p : t;
    }
  }
  for (std::uint64_t i = 1 + lanes * len; i <= half; ++i) table[i * i % P] = 1;
}

/// Batched Legendre symbols for one modulus.
class CharacterTable {
 public:
  explicit CharacterTable(std::uint64_t p) : p_(p) {
    detail::require_odd_prime(p);
    if (p > 0xffffffffULL) throw input_error("CharacterTable: modulus too large for a table");
    fill_character_table(static_cast<std::uint32_t>(p), table_);
  }

  int operator()(std::int64_t a) const { return table_[detail::reduce_mod(a, p_)]; }
  std::uint64_t modulus() const { return p_; }
  const std::vector<std::int8_t>& values() const { return table_; }

 private:
  std::uint64_t p_;
  std::vector<std::int8_t> table_;
};

}  // namespace eulerlab::numerics
