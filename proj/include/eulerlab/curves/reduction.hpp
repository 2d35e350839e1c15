#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/numerics/quadratic_character.hpp"
#include "eulerlab/numerics/sieve.hpp"

namespace eulerlab::curves {

enum class ReductionKind { good, mult_split, mult_nonsplit, additive };

inline std::string_view to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::good: return "good";
    case ReductionKind::mult_split: return "mult_split";
    case ReductionKind::mult_nonsplit: return "mult_nonsplit";
    case ReductionKind::additive: return "additive";
  }
  return "?";
}

inline ReductionKind parse_reduction_kind(std::string_view s) {
  if (s == "good") return ReductionKind::good;
  if (s == "mult_split") return ReductionKind::mult_split;
  if (s == "mult_nonsplit") return ReductionKind::mult_nonsplit;
  if (s == "additive") return ReductionKind::additive;
  throw input_error("unknown reduction kind '" + std::string(s) + "'");
}

/// Reduction type, trace a_p and N_p = #E_ns(F_p) at one prime.
struct ReductionData {
  std::uint64_t p = 0;
  ReductionKind kind = ReductionKind::good;
  std::int64_t ap = 0;
  std::uint64_t np = 0;

  bool operator==(const ReductionData&) const = default;
};

namespace detail {

inline std::uint64_t mod(wide_int v, std::uint64_t p) {
  wide_int r = v % static_cast<wide_int>(p);
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t mod(std::int64_t v, std::uint64_t p) { return mod(static_cast<wide_int>(v), p); }

// Coefficients of the long Weierstrass model reduced mod p.
struct ReducedModel {
  std::uint64_t p, a1, a2, a3, a4, a6;

  ReducedModel(const CurveModel& m, std::uint64_t prime)
      : p(prime), a1(mod(m.a1(), p)), a2(mod(m.a2(), p)), a3(mod(m.a3(), p)), a4(mod(m.a4(), p)),
        a6(mod(m.a6(), p)) {}

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }

  // F(x, y) = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
  std::uint64_t lhs(std::uint64_t x, std::uint64_t y) const {
    return add(mul(y, y), mul(y, add(mul(a1, x), a3)));
  }
  std::uint64_t rhs(std::uint64_t x) const {
    return add(mul(add(mul(add(x, a2), x), a4), x), a6);
  }
  std::uint64_t dfdx(std::uint64_t x, std::uint64_t y) const {
    return sub(mul(a1, y), add(add(mul(3 % p, mul(x, x)), mul(2 % p, mul(a2, x))), a4));
  }
  std::uint64_t dfdy(std::uint64_t x, std::uint64_t y) const {
    return add(add(mul(2 % p, y), mul(a1, x)), a3);
  }
};

// Sum_{x mod p} chi(x^3 + A x + B) with chi read from a character table.
// The cubic is advanced by finite differences f, d1 = f(x+1) - f(x),
// d2 = d1(x+1) - d1(x) in independent lanes starting at x = j * len.
struct CubicLanes {
  std::uint64_t len;
  std::uint32_t six;
};

inline CubicLanes cubic_lane_start(std::uint32_t A, std::uint32_t B, std::uint32_t p, unsigned lanes,
                                   std::uint32_t* f, std::uint32_t* d1, std::uint32_t* d2) {
  const std::uint64_t P = p;
  const std::uint64_t len = P / lanes;
  for (unsigned j = 0; j < lanes; ++j) {
    const std::uint64_t x = j * len;
    f[j] = static_cast<std::uint32_t>(((x * x % P) * x % P + A * x % P + B) % P);
    d1[j] = static_cast<std::uint32_t>((3 * (x * x % P) + 3 * x + 1 + A) % P);
    d2[j] = static_cast<std::uint32_t>((6 * x + 6) % P);
  }
  return {len, static_cast<std::uint32_t>(6 % p)};
}

inline std::int64_t cubic_sum_tail(std::uint32_t A, std::uint32_t B, std::uint32_t p, std::uint64_t from,
                                   const std::int8_t* chi) {
  const std::uint64_t P = p;
  std::int64_t total = 0;
  for (std::uint64_t x = from; x < P; ++x) total += chi[((x * x % P) * x % P + A * x % P + B) % P];
  return total;
}

inline std::int64_t cubic_character_sum_scalar(std::uint32_t A, std::uint32_t B, std::uint32_t p,
                                               const std::int8_t* chi) {
  constexpr unsigned lanes = 4;
  std::uint32_t f[lanes], d1[lanes], d2[lanes];
  const auto [len, six] = cubic_lane_start(A, B, p, lanes, f, d1, d2);
  std::int32_t acc[lanes] = {};
  for (std::uint64_t i = 0; i < len; ++i) {
    for (unsigned j = 0; j < lanes; ++j) {
      acc[j] += chi[f[j]];
      std::uint32_t t = f[j] + d1[j];
      f[j] = t >= p ? t - p : t;
      t = d1[j] + d2[j];
      d1[j] = t >= p ? t - p : t;
      t = d2[j] + six;
      d2[j] = t >= p ? t - p : t;
    }
  }
  std::int64_t total = cubic_sum_tail(A, B, p, lanes * len, chi);
  for (unsigned j = 0; j < lanes; ++j) total += acc[j];
  return total;
}

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define EULERLAB_HAVE_AVX2_KERNEL 1

typedef std::uint32_t u32x8 __attribute__((vector_size(32)));

// 16 lanes held in two 8-wide vectors; the table lookups stay scalar.
__attribute__((target("avx2"))) inline std::int64_t cubic_character_sum_avx2(
    std::uint32_t A, std::uint32_t B, std::uint32_t p, const std::int8_t* chi) {
  constexpr unsigned lanes = 16;
  std::uint32_t f0[lanes], e0[lanes], g0[lanes];
  const auto [len, six] = cubic_lane_start(A, B, p, lanes, f0, e0, g0);
  u32x8 f[2], d1[2], d2[2], pv, sv;
  for (unsigned j = 0; j < 8; ++j) {
    pv[j] = p;
    sv[j] = six;
    for (unsigned k = 0; k < 2; ++k) {
      f[k][j] = f0[8 * k + j];
      d1[k][j] = e0[8 * k + j];
      d2[k][j] = g0[8 * k + j];
    }
  }
  std::int32_t acc[lanes] = {};
  for (std::uint64_t i = 0; i < len; ++i) {
    for (unsigned k = 0; k < 2; ++k) {
      for (unsigned j = 0; j < 8; ++j) acc[8 * k + j] += chi[f[k][j]];
      u32x8 t = f[k] + d1[k];
      f[k] = t - ((t >= pv) & pv);
      t = d1[k] + d2[k];
      d1[k] = t - ((t >= pv) & pv);
      t = d2[k] + sv;
      d2[k] = t - ((t >= pv) & pv);
    }
  }
  std::int64_t total = cubic_sum_tail(A, B, p, lanes * len, chi);
  for (unsigned j = 0; j < lanes; ++j) total += acc[j];
  return total;
}

inline bool cpu_has_avx2() {
  static const bool has = __builtin_cpu_supports("avx2");
  return has;
}
#endif

inline std::int64_t cubic_character_sum(std::uint32_t A, std::uint32_t B, std::uint32_t p,
                                        const std::int8_t* chi) {
#ifdef EULERLAB_HAVE_AVX2_KERNEL
  if (p >= 64 && cpu_has_avx2()) return cubic_character_sum_avx2(A, B, p, chi);
#endif
  return cubic_character_sum_scalar(A, B, p, chi);
}

}  // namespace detail

/// Number of projective points of the reduced model over F_p (all affine
/// solutions, plus one at infinity), by direct O(p^2) enumeration.
inline std::uint64_t count_points_brute_force(const CurveModel& model, std::uint64_t p) {
  const detail::ReducedModel m(model, p);
  std::uint64_t count = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t r = m.rhs(x);
    for (std::uint64_t y = 0; y < p; ++y) {
      if (m.lhs(x, y) == r) ++count;
    }
  }
  return count;
}

namespace detail {

// a_p for a good prime 5 <= p < 2^31 given the character table of p.
inline std::int64_t ap_from_table(const CurveModel& model, std::uint64_t p, const std::int8_t* chi) {
  const auto& w = model.weierstrass();
  const auto A = static_cast<std::uint32_t>(mod(-27 * w.c4, p));
  const auto B = static_cast<std::uint32_t>(mod(-54 * w.c6, p));
  return -cubic_character_sum(A, B, static_cast<std::uint32_t>(p), chi);
}

}  // namespace detail

/// a_p at a prime of good reduction. For p >= 5 the model is moved to
/// y^2 = x^3 - 27 c4 x - 54 c6 and a_p = -sum_x chi(x^3 - 27 c4 x - 54 c6);
/// p = 2, 3 are enumerated. `scratch` is reused as the character table.
inline std::int64_t ap_good(const CurveModel& model, std::uint64_t p, std::vector<std::int8_t>& scratch) {
  if (model.is_bad(p)) throw input_error("ap_good: p divides the conductor");
  if (p < 5) return static_cast<std::int64_t>(p + 1) - static_cast<std::int64_t>(count_points_brute_force(model, p));
  if (p > 0x7fffffffULL) throw input_error("ap_good: p exceeds 2^31");
  numerics::fill_character_table(static_cast<std::uint32_t>(p), scratch);
  return detail::ap_from_table(model, p, scratch.data());
}

inline std::int64_t ap_good(const CurveModel& model, std::uint64_t p) {
  if (!numerics::is_prime(p)) throw input_error("ap_good: p is not prime");
  std::vector<std::int8_t> scratch;
  return ap_good(model, p, scratch);
}

/// Reduction data at a prime dividing the conductor. Counts the affine
/// solutions over F_p, removes the unique singular point and adds the point
/// at infinity, so N_p equals the affine count; a_p = p - N_p.
inline ReductionData reduction_kind(const CurveModel& model, std::uint64_t p) {
  if (!numerics::is_prime(p)) throw input_error("reduction_kind: p is not prime");
  if (!model.is_bad(p)) throw input_error("reduction_kind: p does not divide the conductor");
  const detail::ReducedModel m(model, p);

  std::uint64_t affine = 0;
  std::uint64_t singular = 0;
  if (p == 2) {
    for (std::uint64_t x = 0; x < 2; ++x) {
      for (std::uint64_t y = 0; y < 2; ++y) {
        if (m.lhs(x, y) != m.rhs(x)) continue;
        ++affine;
        if (m.dfdx(x, y) == 0 && m.dfdy(x, y) == 0) ++singular;
      }
    }
  } else {
    // (2y + a1 x + a3)^2 = 4 rhs(x) + (a1 x + a3)^2 has 1 + chi(D) solutions in y
    const std::uint64_t inv2 = (p + 1) / 2;
    for (std::uint64_t x = 0; x < p; ++x) {
      const std::uint64_t lin = m.add(m.mul(m.a1, x), m.a3);
      const std::uint64_t disc = m.add(m.mul(lin, lin), m.mul(4 % p, m.rhs(x)));
      affine += static_cast<std::uint64_t>(1 + numerics::detail::jacobi(disc, p));
      const std::uint64_t y = m.mul(m.sub(0, lin), inv2);
      if (m.lhs(x, y) == m.rhs(x) && m.dfdx(x, y) == 0) ++singular;
    }
  }
  if (singular != 1) {
    throw domain_error("reduction at p=" + std::to_string(p) + " has " + std::to_string(singular) +
                       " singular points; is the model minimal?");
  }
  ReductionData out{p, ReductionKind::additive, static_cast<std::int64_t>(p) - static_cast<std::int64_t>(affine), affine};
  switch (out.ap) {
    case 1: out.kind = ReductionKind::mult_split; break;
    case -1: out.kind = ReductionKind::mult_nonsplit; break;
    case 0: out.kind = ReductionKind::additive; break;
    default:
      throw domain_error("bad reduction at p=" + std::to_string(p) + " gave a_p outside {-1,0,1}");
  }
  return out;
}

/// Reduction data at any prime.
inline ReductionData reduction_data(const CurveModel& model, std::uint64_t p,
                                    std::vector<std::int8_t>& scratch) {
  if (model.is_bad(p)) return reduction_kind(model, p);
  const std::int64_t ap = ap_good(model, p, scratch);
  return {p, ReductionKind::good, ap, static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 - ap)};
}

}  // namespace eulerlab::curves
