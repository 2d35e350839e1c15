#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/curves/frobenius.hpp"
#include "eulerlab/curves/reduction.hpp"
#include "eulerlab/numerics/sieve.hpp"
#include "support.hpp"

using namespace eulerlab;
using namespace eulerlab::curves;
namespace ts = testing_support;

namespace {

const CurveModel e37({0, 0, 1, -1, 0}, 37, -1, "37a1");
const CurveModel e11({0, -1, 1, -10, -20}, 11, 1, "11a1");

}  // namespace

TEST(Invariants, HandValues) {
  const auto a = invariants(std::array<std::int64_t, 5>{0, 0, 1, -1, 0});
  EXPECT_EQ(static_cast<long long>(a.b2), 0);
  EXPECT_EQ(static_cast<long long>(a.b4), -2);
  EXPECT_EQ(static_cast<long long>(a.b6), 1);
  EXPECT_EQ(static_cast<long long>(a.b8), -1);
  EXPECT_EQ(static_cast<long long>(a.c4), 48);
  EXPECT_EQ(static_cast<long long>(a.discriminant), 37);
  EXPECT_EQ(static_cast<long long>(invariants(std::array<std::int64_t, 5>{0, 0, 0, 0, 1}).discriminant), -432);
}

TEST(Invariants, SingularCurveRejected) {
  EXPECT_THROW(invariants(std::array<std::int64_t, 5>{0, 0, 0, 0, 0}), singular_curve_error);
  EXPECT_THROW(CurveModel({0, 0, 0, 0, 0}, 1, 1), singular_curve_error);
}

TEST(CurveModel, ValidatesConductorAndRootNumber) {
  EXPECT_THROW(CurveModel({0, 0, 1, -1, 0}, 0, 1), input_error);
  EXPECT_THROW(CurveModel({0, 0, 1, -1, 0}, 37, 0), input_error);
  EXPECT_THROW(CurveModel({0, 0, 1, -1, 0}, 37 * 5, -1), input_error);
  EXPECT_EQ(e37.bad_primes(), std::vector<std::uint64_t>{37});
}

TEST(Reduction, BadPrimesByEnumeration) {
  const auto r37 = reduction_kind(e37, 37);
  EXPECT_EQ(r37.kind, ReductionKind::mult_nonsplit);
  EXPECT_EQ(r37.ap, -1);
  EXPECT_EQ(r37.np, 38u);
  const auto r11 = reduction_kind(e11, 11);
  EXPECT_EQ(r11.ap, 1);
  EXPECT_EQ(r11.np, 10u);
}

TEST(Reduction, AdditiveGivesZeroTrace) {
  const CurveModel m({0, 0, 0, 0, 25}, 5, 1);
  const auto r = reduction_kind(m, 5);
  EXPECT_EQ(r.kind, ReductionKind::additive);
  EXPECT_EQ(r.ap, 0);
  EXPECT_EQ(r.np, 5u);
}

TEST(Reduction, NonsplitMultiplicative) {
  const CurveModel m({1, 0, 1, 4, -6}, 14, 1, "14a1");
  const auto r2 = reduction_kind(m, 2);
  EXPECT_EQ(r2.kind, ReductionKind::mult_nonsplit);
  EXPECT_EQ(r2.ap, -1);
  const auto r7 = reduction_kind(m, 7);
  EXPECT_EQ(r7.kind, ReductionKind::mult_split);
  EXPECT_EQ(r7.ap, 1);
}

TEST(ApGood, SmallPrimes) {
  EXPECT_EQ(ap_good(e37, 2), -2);
  EXPECT_EQ(ap_good(e37, 3), -3);
  EXPECT_EQ(ap_good(e11, 2), -2);
}

TEST(ApGood, CharacterSumMatchesEnumerationTo1000) {
  for (const auto* m : {&e37, &e11}) {
    for (std::uint64_t p : numerics::sieve_primes(1000).primes) {
      if (m->is_bad(p)) continue;
      const std::int64_t n = ts::enumerate_points(m->ainvs(), static_cast<std::int64_t>(p));
      ASSERT_EQ(ap_good(*m, p), static_cast<std::int64_t>(p) + 1 - n) << m->label() << " p=" << p;
    }
  }
}

TEST(ApGood, VectorKernelMatchesScalar) {
  // large primes exercise the lane kernel and its tail
  for (std::uint64_t p : {65537ull, 99991ull, 1000003ull}) {
    std::vector<std::int8_t> chi;
    numerics::fill_character_table(static_cast<std::uint32_t>(p), chi);
    const auto& w = e37.weierstrass();
    const auto A = static_cast<std::uint32_t>(detail::mod(-27 * w.c4, p));
    const auto B = static_cast<std::uint32_t>(detail::mod(-54 * w.c6, p));
    EXPECT_EQ(detail::cubic_character_sum(A, B, static_cast<std::uint32_t>(p), chi.data()),
              detail::cubic_character_sum_scalar(A, B, static_cast<std::uint32_t>(p), chi.data()));
  }
}

TEST(ApTable, Examples) {
  const auto t10 = ap_table(e37, 10);
  ASSERT_EQ(t10.size(), 4u);
  for (const auto& e : t10) EXPECT_EQ(e.kind, ReductionKind::good);
  EXPECT_EQ(ap_table(e11, 11).entries().back().kind, ReductionKind::mult_split);
  const auto t2 = ap_table(e37, 2);
  ASSERT_EQ(t2.size(), 1u);
  EXPECT_EQ(t2.entries()[0].p, 2u);
}

TEST(ApTable, HasseBoundOnFixtures) {
  for (const auto& rec : ts::records()) {
    for (const auto& e : ts::table(rec.label)) {
      if (e.kind != ReductionKind::good) continue;
      ASSERT_LE(static_cast<double>(e.ap * e.ap), 4.0 * static_cast<double>(e.p)) << rec.label << " p=" << e.p;
    }
  }
}

TEST(ApTable, DeterministicAcrossWorkers) {
  const auto one = ap_table(e37, 30000, {1, 64});
  for (unsigned w : {4u, 16u}) {
    const auto many = ap_table(e37, 30000, {w, 64});
    EXPECT_EQ(one.entries(), many.entries()) << w;
  }
}

TEST(ApTable, SharedSweepMatchesSingleCurve) {
  const auto both = ap_tables({e37, e11}, 5000);
  EXPECT_EQ(both[0].entries(), ap_table(e37, 5000).entries());
  EXPECT_EQ(both[1].entries(), ap_table(e11, 5000).entries());
}

TEST(ApTable, CsvRoundTrip) {
  const auto t = ap_table(e11, 2000);
  std::stringstream ss;
  write_ap_table_csv(t, ss);
  const auto back = read_ap_table_csv(ss, e11);
  EXPECT_EQ(back.entries(), t.entries());
  EXPECT_EQ(back.x_max(), 1999u);
}

TEST(ApTable, CsvRejectsGapsAndWrongCurves) {
  std::stringstream missing("p,kind,ap,np\n2,good,-2,5\n5,good,0,6\n");
  EXPECT_THROW(read_ap_table_csv(missing, e37), validation_error);
  std::stringstream good;
  write_ap_table_csv(ap_table(e37, 40), good);
  std::string text = good.str();
  const std::string row = "37,mult_nonsplit";
  const auto at = text.find(row);
  ASSERT_NE(at, std::string::npos);
  text.replace(at, row.size(), "37,good");
  std::stringstream wrong_kind(text);
  EXPECT_THROW(read_ap_table_csv(wrong_kind, e37), validation_error);
  std::stringstream header("p,ap\n2,-2\n");
  EXPECT_THROW(read_ap_table_csv(header, e37), parse_error);
}

TEST(ApTable, CoverageChecks) {
  const auto t = ap_table(e37, 100);
  EXPECT_NO_THROW(t.require_coverage(100.9));
  EXPECT_THROW(t.require_coverage(101.0), input_error);
}

TEST(Frobenius, PowerSums) {
  EXPECT_EQ(static_cast<long long>(frobenius_power_sum(-2, 2, 0)), 2);
  EXPECT_EQ(static_cast<long long>(frobenius_power_sum(5, 7, 1)), 5);
  EXPECT_EQ(static_cast<long long>(frobenius_power_sum(5, 7, 2)), 25 - 14);
  EXPECT_EQ(static_cast<long long>(frobenius_power_sum(-2, 2, 3)), 4);
}

TEST(Frobenius, PowerSumBoundOnTable) {
  for (const auto& e : ts::table("37a1")) {
    if (e.kind != ReductionKind::good || e.p > 2000) continue;
    for (int k = 0; k <= 10; ++k) {
      const double t = frobenius_power_sum_real(e.ap, e.p, k);
      ASSERT_LE(std::abs(t), 2.0 * std::pow(static_cast<double>(e.p), k / 2.0) * (1 + 1e-12)) << e.p << " " << k;
    }
  }
}
