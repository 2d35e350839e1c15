#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eulerlab/errors.hpp"

namespace eulerlab::curves {

using wide_int = __int128;

inline std::string to_string(wide_int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

namespace detail {

inline wide_int checked_mul(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_mul_overflow(a, b, &r)) throw range_error("curve invariants overflow 128 bits");
  return r;
}

inline wide_int checked_add(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_add_overflow(a, b, &r)) throw range_error("curve invariants overflow 128 bits");
  return r;
}

}  // namespace detail

/// b- and c-invariants and discriminant of a long Weierstrass model.
struct WeierstrassInvariants {
  wide_int b2, b4, b6, b8, c4, c6, discriminant;
};

/// Exact integer invariants; throws singular_curve_error when the discriminant vanishes.
inline WeierstrassInvariants invariants(const std::array<std::int64_t, 5>& a) {
  using detail::checked_add;
  using detail::checked_mul;
  const wide_int a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  WeierstrassInvariants w{};
  w.b2 = checked_add(checked_mul(a1, a1), checked_mul(4, a2));
  w.b4 = checked_add(checked_mul(2, a4), checked_mul(a1, a3));
  w.b6 = checked_add(checked_mul(a3, a3), checked_mul(4, a6));
  const wide_int b2b6 = checked_mul(w.b2, w.b6);
  const wide_int b4sq = checked_mul(w.b4, w.b4);
  w.b8 = checked_add(b2b6, -b4sq) / 4;
  w.c4 = checked_add(checked_mul(w.b2, w.b2), checked_mul(-24, w.b4));
  const wide_int b2cube = checked_mul(checked_mul(w.b2, w.b2), w.b2);
  w.c6 = checked_add(checked_add(-b2cube, checked_mul(36, checked_mul(w.b2, w.b4))),
                     checked_mul(-216, w.b6));
  // -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6, equal to (c4^3 - c6^2) / 1728
  w.discriminant = checked_add(
      checked_add(checked_mul(checked_mul(-w.b2, w.b2), w.b8), checked_mul(-8, checked_mul(b4sq, w.b4))),
      checked_add(checked_mul(-27, checked_mul(w.b6, w.b6)), checked_mul(9, checked_mul(b2b6, w.b4))));
  if (w.discriminant == 0) throw singular_curve_error("singular curve: discriminant is zero");
  return w;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// An elliptic curve over Q given by a (trusted globally minimal) long
/// Weierstrass model, with its conductor and root number. Immutable.
class CurveModel {
 public:
  CurveModel(std::array<std::int64_t, 5> ainvs, std::uint64_t conductor, int root_number,
             std::string label = {})
      : ainvs_(ainvs),
        conductor_(conductor),
        root_number_(root_number),
        label_(std::move(label)),
        inv_(curves::invariants(ainvs)) {
    if (conductor_ == 0) throw input_error("conductor must be positive");
    if (root_number_ != 1 && root_number_ != -1) throw input_error("root number must be +1 or -1");
    bad_primes_ = prime_factors(conductor_);
    const wide_int disc = inv_.discriminant < 0 ? -inv_.discriminant : inv_.discriminant;
    for (std::uint64_t p : bad_primes_) {
      if (disc % static_cast<wide_int>(p) != 0) {
        throw input_error("conductor prime " + std::to_string(p) + " does not divide the discriminant");
      }
    }
  }

  const std::array<std::int64_t, 5>& ainvs() const { return ainvs_; }
  std::int64_t a1() const { return ainvs_[0]; }
  std::int64_t a2() const { return ainvs_[1]; }
  std::int64_t a3() const { return ainvs_[2]; }
  std::int64_t a4() const { return ainvs_[3]; }
  std::int64_t a6() const { return ainvs_[4]; }
  std::uint64_t conductor() const { return conductor_; }
  int root_number() const { return root_number_; }
  const std::string& label() const { return label_; }
  const WeierstrassInvariants& weierstrass() const { return inv_; }
  const std::vector<std::uint64_t>& bad_primes() const { return bad_primes_; }
  bool is_bad(std::uint64_t p) const { return conductor_ % p == 0; }

 private:
  std::array<std::int64_t, 5> ainvs_;
  std::uint64_t conductor_;
  int root_number_;
  std::string label_;
  WeierstrassInvariants inv_;
  std::vector<std::uint64_t> bad_primes_;
};

inline WeierstrassInvariants invariants(const CurveModel& model) { return model.weierstrass(); }

}  // namespace eulerlab::curves
