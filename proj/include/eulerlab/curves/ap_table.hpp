#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "eulerlab/curves/curve_model.hpp"
#include "eulerlab/curves/reduction.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/numerics/parallel.hpp"
#include "eulerlab/numerics/sieve.hpp"

namespace eulerlab::curves {

/// Reduction data for every prime p <= x_max, ascending.
class ApTable {
 public:
  ApTable(CurveModel curve, std::uint64_t x_max, std::vector<ReductionData> entries)
      : curve_(std::move(curve)), x_max_(x_max), entries_(std::move(entries)) {}

  const CurveModel& curve() const { return curve_; }
  std::uint64_t x_max() const { return x_max_; }
  const std::vector<ReductionData>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// Number of entries with p <= x.
  std::size_t count_upto(double x) const {
    return static_cast<std::size_t>(
        std::upper_bound(entries_.begin(), entries_.end(), x,
                         [](double v, const ReductionData& e) { return v < static_cast<double>(e.p); }) -
        entries_.begin());
  }

  const ReductionData* find(std::uint64_t p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const ReductionData& e, std::uint64_t v) { return e.p < v; });
    return (it != entries_.end() && it->p == p) ? &*it : nullptr;
  }

  /// Throws input_error unless the table covers every prime <= x.
  void require_coverage(double x) const {
    if (std::floor(x) > static_cast<double>(x_max_)) {
      throw input_error("a_p table covers p <= " + std::to_string(x_max_) + ", need " +
                        std::to_string(static_cast<std::uint64_t>(x)));
    }
  }

 private:
  CurveModel curve_;
  std::uint64_t x_max_;
  std::vector<ReductionData> entries_;
};

struct SweepOptions {
  unsigned workers = numerics::default_workers();
  std::size_t block_primes = 1024;
};

/// Reduction data for all p <= x_max on several curves at once; each
/// character table is built once and shared by all curves. Primes are cut
/// into fixed-size blocks that workers fill in place, so the tables do not
/// depend on the worker count.
inline std::vector<ApTable> ap_tables(const std::vector<CurveModel>& models, std::uint64_t x_max,
                                      SweepOptions opt = {}) {
  if (x_max < 2) throw input_error("ap_table: x_max must be at least 2");
  if (x_max > 0x7fffffffULL) throw input_error("ap_table: x_max exceeds 2^31");
  if (opt.block_primes == 0) throw input_error("ap_table: block size must be positive");
  const auto primes = numerics::sieve_primes(x_max).primes;
  std::vector<std::vector<ReductionData>> entries(models.size(), std::vector<ReductionData>(primes.size()));
  const std::size_t n_blocks = (primes.size() + opt.block_primes - 1) / opt.block_primes;
  numerics::for_each_block(n_blocks, opt.workers, [&](std::size_t b) {
    std::vector<std::int8_t> chi;
    const std::size_t lo = b * opt.block_primes;
    const std::size_t hi = std::min(primes.size(), lo + opt.block_primes);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint64_t p = primes[i];
      const bool table_needed =
          p >= 5 && std::any_of(models.begin(), models.end(), [p](const CurveModel& m) { return !m.is_bad(p); });
      if (table_needed) numerics::fill_character_table(static_cast<std::uint32_t>(p), chi);
      for (std::size_t c = 0; c < models.size(); ++c) {
        const auto& m = models[c];
        if (m.is_bad(p)) {
          entries[c][i] = reduction_kind(m, p);
        } else {
          const std::int64_t ap = p < 5 ? ap_good(m, p, chi) : detail::ap_from_table(m, p, chi.data());
          entries[c][i] = {p, ReductionKind::good, ap, static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 - ap)};
        }
      }
    }
  });
  std::vector<ApTable> out;
  out.reserve(models.size());
  for (std::size_t c = 0; c < models.size(); ++c) out.emplace_back(models[c], x_max, std::move(entries[c]));
  return out;
}

/// Reduction data for all p <= x_max on one curve.
inline ApTable ap_table(const CurveModel& model, std::uint64_t x_max, SweepOptions opt = {}) {
  return std::move(ap_tables({model}, x_max, opt).front());
}

inline void write_ap_table_csv(const ApTable& table, std::ostream& out) {
  out << "p,kind,ap,np\n";
  for (const auto& e : table) out << e.p << ',' << to_string(e.kind) << ',' << e.ap << ',' << e.np << '\n';
}

/// Parses the CSV written by write_ap_table_csv and checks it against the
/// curve: complete prime coverage up to the last row, bad primes flagged,
/// N_p consistent with a_p, Hasse bound. x_max is the last prime listed
/// unless given explicitly; rows above an explicit x_max are dropped.
inline ApTable read_ap_table_csv(std::istream& in, const CurveModel& model, std::uint64_t x_max = 0) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != "p,kind,ap,np") {
    throw parse_error("header", line_no, "expected 'p,kind,ap,np'");
  }
  std::vector<ReductionData> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string p, kind, ap, np;
    if (!std::getline(ss, p, ',') || !std::getline(ss, kind, ',') || !std::getline(ss, ap, ',') ||
        !std::getline(ss, np)) {
      throw parse_error("row", line_no, "expected four comma-separated fields");
    }
    ReductionData e;
    try {
      e.p = std::stoull(p);
      e.kind = parse_reduction_kind(kind);
      e.ap = std::stoll(ap);
      e.np = std::stoull(np);
    } catch (const std::exception& ex) {
      throw parse_error("row", line_no, ex.what());
    }
    entries.push_back(e);
  }
  if (entries.empty()) throw validation_error("a_p table is empty");
  if (x_max == 0) x_max = entries.back().p;
  while (!entries.empty() && entries.back().p > x_max) entries.pop_back();
  const auto primes = numerics::sieve_primes(x_max).primes;
  if (primes.size() != entries.size()) {
    throw validation_error("a_p table does not cover every prime <= " + std::to_string(x_max));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto where = " at p=" + std::to_string(e.p);
    if (e.p != primes[i]) throw validation_error("a_p table rows out of order or missing" + where);
    const auto sp = static_cast<std::int64_t>(e.p);
    if (model.is_bad(e.p)) {
      if (e.kind == ReductionKind::good) throw validation_error("bad prime marked good" + where);
      if (static_cast<std::int64_t>(e.np) != sp - e.ap) throw validation_error("N_p != p - a_p" + where);
    } else {
      if (e.kind != ReductionKind::good) throw validation_error("good prime marked bad" + where);
      if (static_cast<std::int64_t>(e.np) != sp + 1 - e.ap) throw validation_error("N_p != p + 1 - a_p" + where);
      if (static_cast<double>(e.ap) * e.ap > 4.0 * sp) throw validation_error("Hasse bound violated" + where);
    }
  }
  return ApTable(model, x_max, std::move(entries));
}

}  // namespace eulerlab::curves
