#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/errors.hpp"
#include "eulerlab/eulerprod/explicit_formula.hpp"
#include "eulerlab/eulerprod/prime_sums.hpp"
#include "eulerlab/experiments/bsd.hpp"
#include "eulerlab/experiments/excursions.hpp"
#include "eulerlab/experiments/mertens.hpp"
#include "eulerlab/experiments/thresholds.hpp"
#include "eulerlab/experiments/zero_fit.hpp"
#include "eulerlab/interface/dataset.hpp"
#include "eulerlab/interface/results.hpp"
#include "eulerlab/lfunction/afe.hpp"
#include "eulerlab/lfunction/dirichlet.hpp"
#include "eulerlab/lfunction/special_values.hpp"
#include "eulerlab/lfunction/zeros.hpp"
#include "eulerlab/numerics/config.hpp"

namespace eulerlab::interface {

enum exit_code : int { exit_ok = 0, exit_invalid = 1, exit_check_failed = 2 };

/// Flags shared by every subcommand.
struct CommonOptions {
  std::string curve;
  std::string data;
  std::string out = "results";
  std::string ap_table_path;
  unsigned workers = numerics::default_workers();
  bool seedless = false;
};

namespace cli_detail {

namespace th = experiments::thresholds;
using nlohmann::json;

struct Session {
  CommonOptions opt;
  std::ostream* log = &std::cerr;

  void progress(const std::string& experiment, const std::string& msg) const {
    *log << "[eulerlab] " << opt.curve << " " << experiment << ": " << msg << '\n';
  }

  CurveRecord record() const {
    std::string path = opt.data;
    if (path.empty()) {
      if (const char* env = std::getenv("EULERLAB_DATA")) path = env;
    }
    if (path.empty()) throw input_error("no dataset: pass --data or set EULERLAB_DATA");
    const auto records = load_dataset(path);
    return find_record(records, opt.curve);
  }

  curves::ApTable table(const curves::CurveModel& model, double x, const std::string& experiment) const {
    const auto limit = static_cast<std::uint64_t>(std::max(2.0, std::floor(x)));
    if (!opt.ap_table_path.empty()) {
      progress(experiment, "reading a_p table " + opt.ap_table_path);
      std::ifstream in(opt.ap_table_path, std::ios::binary);
      if (!in) throw io_error(opt.ap_table_path, "cannot open a_p table");
      return curves::read_ap_table_csv(in, model, limit);
    }
    progress(experiment, "computing a_p for p <= " + std::to_string(limit));
    return curves::ap_table(model, limit, {opt.workers});
  }

  // Table large enough for both x and the AFE.
  curves::ApTable analytic_table(const curves::CurveModel& model, double x, const std::string& experiment) const {
    const double need = static_cast<double>(lfunction::required_terms(model.conductor()));
    return table(model, std::max(x, need), experiment);
  }

  void write(const CurveRecord& rec, const std::string& experiment, double x_max, const ResultTable& rows,
             json summary, const std::string& suffix = {}) const {
    summary["curve"] = rec.label;
    summary["experiment"] = experiment;
    summary["randomness"] = "none";
    const auto path = std::filesystem::path(opt.out) / (result_stem(rec.label, experiment, x_max) + suffix + ".csv");
    write_results(rows, path, summary);
    progress(experiment, "wrote " + path.string());
  }
};

inline lfunction::DirichletCoeffs afe_coeffs(const curves::CurveModel& model, const curves::ApTable& table) {
  return lfunction::dirichlet_coeffs(model, table, lfunction::required_terms(model.conductor()));
}

inline int verdict(json& summary, const json& flags) {
  bool ok = true;
  for (const auto& [k, v] : flags.items()) ok = ok && v.get<bool>();
  summary["outcome"] = flags;
  summary["pass"] = ok;
  return ok ? exit_ok : exit_check_failed;
}

inline double decade_floor(double x) { return std::pow(10.0, std::floor(std::log10(x) + 1e-12)); }

// Decade block ends 10^k from lo up to x_max.
inline std::vector<double> decade_blocks(double lo, double x_max) {
  std::vector<double> out;
  for (double X = lo; X <= x_max * (1 + 1e-12); X *= 10.0) out.push_back(X);
  return out;
}

inline bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return v.size() >= 2;
}

// Ingested derivatives against the AFE path up to the rank.
inline double ingestion_gap(const CurveRecord& rec, const curves::CurveModel& model, const curves::ApTable& table) {
  const auto coeffs = afe_coeffs(model, table);
  const int k_max = std::min(4, std::max(rec.rank, 0));
  const auto afe = lfunction::l_derivatives_at_1(model, coeffs, std::max(k_max, 1));
  double gap = 0.0;
  for (int k = 0; k <= k_max && k < static_cast<int>(rec.l_derivs.size()); ++k) {
    gap = std::max(gap, std::abs(afe.derivs[k] - rec.l_derivs[k]));
  }
  return gap;
}

inline int cmd_ap_table(const Session& ss, double limit) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.table(model, limit, "ap-table");
  std::ostringstream csv;
  curves::write_ap_table_csv(table, csv);
  bool hasse = true;
  for (const auto& e : table) {
    if (e.kind == curves::ReductionKind::good && static_cast<double>(e.ap) * e.ap > 4.0 * e.p) hasse = false;
  }
  const auto stem = result_stem(rec.label, "ap-table", limit);
  write_text(std::filesystem::path(ss.opt.out) / (stem + ".csv"), csv.str());
  json summary{{"curve", rec.label}, {"experiment", "ap-table"}, {"randomness", "none"},
               {"inputs", {{"limit", limit}}}, {"primes", table.size()}};
  const int code = verdict(summary, json{{"hasse_bound", hasse}});
  write_text(std::filesystem::path(ss.opt.out) / (stem + ".json"), summary.dump(2) + "\n");
  ss.progress("ap-table", "wrote " + std::to_string(table.size()) + " rows");
  return code;
}

inline int cmd_euler_product(const Session& ss, double x_max, std::vector<double> s_values, int n_checkpoints) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.table(model, x_max, "euler-product");
  const auto xs = experiments::log_checkpoints(100.0, x_max, n_checkpoints);
  ResultTable rows{{"x", "s", "log_euler_product", "bn_partial_sum"}, {}};
  for (double s : s_values) {
    for (double x : xs) {
      rows.add({x, s, eulerprod::log_partial_euler_product(model, table, x, s, ss.opt.workers),
                eulerprod::bn_partial_sum(model, table, x, s, ss.opt.workers)});
    }
  }
  json summary{{"inputs", {{"xmax", x_max}, {"s", s_values}, {"checkpoints", n_checkpoints}}}};
  const int code = verdict(summary, json::object());
  ss.write(rec, "euler-product", x_max, rows, summary);
  return code;
}

inline int cmd_psi(const Session& ss, double x_max) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.table(model, x_max, "psi");
  const auto steps = eulerprod::psi_steps(model, table, x_max);
  ResultTable rows{{"x", "psi", "loglog_ratio", "envelope_ratio"}, {}};
  double worst = 0.0;
  for (const auto& p : steps) {
    const double lx = std::log(p.x);
    const double env = std::abs(p.psi) / (p.x * lx * lx);
    worst = std::max(worst, env);
    rows.add({p.x, p.psi, p.bound_ratio.value_or(NAN), env});
  }
  json summary{{"inputs", {{"xmax", x_max}}},
               {"thresholds", {{"psi_envelope", th::psi_envelope}}},
               {"max_envelope_ratio", worst},
               {"jumps", steps.size()}};
  const int code = verdict(summary, json{{"psi_envelope", worst <= th::psi_envelope}});
  ss.write(rec, "psi", x_max, rows, summary);
  return code;
}

inline int cmd_zeros(const Session& ss, double t_max) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.analytic_table(model, 2.0, "zeros");
  const auto coeffs = afe_coeffs(model, table);
  lfunction::ZeroScanOptions scan;
  scan.workers = ss.opt.workers;
  ss.progress("zeros", "scanning Z(t) on (0, " + format_real(t_max) + "]");
  const auto found = lfunction::find_zeros(model, coeffs, t_max, rec.rank, scan);
  const auto reference = rec.zero_list().positive_upto(t_max);
  ResultTable rows{{"gamma", "multiplicity", "reference"}, {}};
  double gap = 0.0;
  std::size_t i = 0;
  for (const auto& z : found) {
    double ref = NAN;
    if (z.gamma > 0.0 && i < reference.size()) {
      ref = reference[i++].gamma;
      gap = std::max(gap, std::abs(ref - z.gamma));
    } else if (z.gamma == 0.0) {
      ref = 0.0;
    }
    rows.add({z.gamma, static_cast<std::int64_t>(z.multiplicity), ref});
  }
  const std::size_t found_positive = found.positive_upto(t_max).size();
  json summary{{"inputs", {{"tmax", t_max}}},
               {"thresholds", {{"ingestion_cross_check", th::ingestion_cross_check}}},
               {"max_gap", gap},
               {"found", found_positive},
               {"reference", reference.size()}};
  const int code = verdict(summary, json{{"count_matches", found_positive == reference.size()},
                                         {"ordinates_match", gap <= th::ingestion_cross_check}});
  ss.write(rec, "zeros", t_max, rows, summary);
  return code;
}

inline int cmd_explicit_check(const Session& ss, double x, double s, double T, double T0) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.analytic_table(model, x, "explicit-check");
  const auto coeffs = afe_coeffs(model, table);
  const auto zeros = rec.zero_list();
  if (T > zeros.height()) ss.progress("explicit-check", "warning: T exceeds the highest stored zero");
  ResultTable rows{{"T", "lhs", "pole_term", "log_derivative", "zero_sum", "trivial", "residual"}, {}};
  auto run = [&](double t) {
    const auto r = eulerprod::explicit_formula_residual(model, table, zeros, coeffs, x, s, t, ss.opt.workers);
    rows.add({t, r.lhs, r.pole_term, r.log_derivative, r.zero_sum, r.trivial, r.residual});
    return r.residual;
  };
  const double res0 = run(T0);
  const double res = run(T);
  const double limit = s > 1.5 ? th::explicit_formula_residual_s25 : th::explicit_formula_residual;
  json summary{{"inputs", {{"x", x}, {"s", s}, {"tmax", T}, {"tmax_baseline", T0}}},
               {"thresholds", {{"residual", limit}}},
               {"residual", res},
               {"residual_baseline", res0}};
  json flags{{"residual_below_threshold", std::abs(res) < limit}};
  if (s <= 1.5) flags["residual_shrinks_with_T"] = std::abs(res) < std::abs(res0);
  const int code = verdict(summary, flags);
  ss.write(rec, "explicit-check", x, rows, summary, "_s" + format_real(s));
  return code;
}

inline int cmd_theorem_a(const Session& ss, std::vector<double> xs, std::vector<double> s_values,
                         std::optional<double> T_opt, double kappa) {
  std::sort(xs.begin(), xs.end());
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.analytic_table(model, xs.back(), "theorem-a");
  const auto coeffs = afe_coeffs(model, table);
  const auto zeros = rec.zero_list();
  const double T = T_opt.value_or(zeros.height());
  const auto fit = experiments::zero_count_fit(zeros, zeros.height());
  const auto values = rec.special_values();
  ResultTable rows{{"x", "s", "logL", "li_term", "r_term", "u_term", "total", "lhs", "err_bound", "r_tail", "gap"},
                   {}};
  json flags = json::object();
  bool within = true;
  for (double s : s_values) {
    std::vector<double> gaps;
    for (double x : xs) {
      const auto b = eulerprod::theorem_a_rhs(model, table, coeffs, values, zeros, x, s, T, fit.density(), kappa,
                                              ss.opt.workers);
      const double tail = b.r_tail.value_or(0.0);
      gaps.push_back(b.gap());
      within = within && b.gap() <= b.err_bound + tail;
      rows.add({b.x, b.s, b.log_L, b.li_term, b.r_term, b.u_term, b.total, b.lhs, b.err_bound, tail, b.gap()});
    }
    if (gaps.size() >= 2) flags["gap_shrinks_s=" + format_real(s)] = gaps.back() < gaps.front();
  }
  flags["gap_within_bound"] = within;
  json summary{{"inputs", {{"x", xs}, {"s", s_values}, {"tmax", T}, {"kappa", kappa}}},
               {"zero_density", {{"alpha", fit.alpha}, {"c", fit.c}}}};
  const int code = verdict(summary, flags);
  ss.write(rec, "theorem-a", xs.back(), rows, summary);
  return code;
}

inline int cmd_verify_bsd(const Session& ss, double x_max, int n_checkpoints) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.analytic_table(model, x_max, "verify-bsd");
  const auto values = rec.special_values();
  const auto xs = experiments::log_checkpoints(100.0, x_max, n_checkpoints);
  const auto scan = experiments::bsd_product_scan(model, table, values, xs, std::nullopt, ss.opt.workers);
  ResultTable rows{{"x", "observed", "predicted", "deviation", "s_path"}, {}};
  for (const auto& r : scan.rows) rows.add({r.x, r.observed, r.predicted, r.deviation, r.s_path});

  json medians = json::array();
  std::vector<double> meds;
  for (double X : decade_blocks(1e3, x_max)) {
    meds.push_back(experiments::bsd_block_median(table, values, X));
    medians.push_back({{"X", X}, {"median", meds.back()}});
  }
  const double top = decade_floor(x_max);
  const double at_r = experiments::bsd_block_median(table, values, top);
  const double up = experiments::bsd_block_median(table, values, top, rec.rank + 1);
  std::optional<double> down;
  if (rec.rank > 0) down = experiments::bsd_block_median(table, values, top, rec.rank - 1);
  const double ingest = ingestion_gap(rec, model, table);

  json flags{{"constant_positive", std::isfinite(scan.log_c)},
             {"ingestion_matches_afe", ingest <= th::ingestion_cross_check},
             {"rank_selective", up > at_r && (!down || *down > at_r)}};
  if (rec.rank == 0) {
    flags["deviation_within_band"] = std::abs(scan.rows.back().deviation) <= th::bsd_deviation_rank0;
  } else {
    flags["median_decreasing"] = strictly_decreasing(meds);
  }
  json summary{{"inputs", {{"xmax", x_max}, {"checkpoints", n_checkpoints}}},
               {"thresholds", {{"bsd_deviation_rank0", th::bsd_deviation_rank0},
                               {"ingestion_cross_check", th::ingestion_cross_check}}},
               {"rank", rec.rank},
               {"log_C", scan.log_c},
               {"block_medians", medians},
               {"median_rank_plus_1", up},
               {"median_rank_minus_1", down ? json(*down) : json(nullptr)},
               {"ingestion_gap", ingest}};
  const int code = verdict(summary, flags);
  ss.write(rec, "verify-bsd", x_max, rows, summary);
  return code;
}

inline int cmd_mertens(const Session& ss, double x_max, int n_checkpoints) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.table(model, x_max, "mertens");
  ResultTable rows{{"x", "B_hat"}, {}};
  for (double x : experiments::log_checkpoints(100.0, x_max, n_checkpoints)) {
    rows.add({x, experiments::mertens_b_estimate(model, table, x, ss.opt.workers)});
  }
  const double hi = experiments::mertens_b_estimate(model, table, x_max, ss.opt.workers);
  const double lo = experiments::mertens_b_estimate(model, table, std::max(3.0, x_max / 10.0), ss.opt.workers);
  json summary{{"inputs", {{"xmax", x_max}, {"checkpoints", n_checkpoints}}},
               {"thresholds", {{"mertens_stabilization", th::mertens_stabilization}}},
               {"B_hat", hi},
               {"B_hat_tenth", lo}};
  const int code = verdict(summary, json{{"stabilized", std::abs(hi - lo) < th::mertens_stabilization}});
  ss.write(rec, "mertens", x_max, rows, summary);
  return code;
}

inline int cmd_u1_limit(const Session& ss, double x_max, int n_checkpoints) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.table(model, x_max, "u1-limit");
  const auto check =
      experiments::u1_limit_check(model, table, experiments::log_checkpoints(100.0, x_max, n_checkpoints),
                                  ss.opt.workers);
  ResultTable rows{{"x", "U1", "deviation"}, {}};
  for (const auto& r : check) rows.add({r.x, r.u1, r.deviation});
  std::vector<double> meds;
  json medians = json::array();
  const double top = decade_floor(x_max);
  for (double X : decade_blocks(std::max(1e3, top / 100.0), top)) {
    meds.push_back(experiments::u1_block_median(table, X));
    medians.push_back({{"X", X}, {"median", meds.back()}});
  }
  json summary{{"inputs", {{"xmax", x_max}, {"checkpoints", n_checkpoints}}},
               {"thresholds", {{"u1_deviation", th::u1_deviation}}},
               {"limit", experiments::u1_limit},
               {"block_medians", medians}};
  const int code = verdict(summary, json{{"deviation_small", check.back().deviation < th::u1_deviation},
                                         {"median_decreasing", strictly_decreasing(meds)}});
  ss.write(rec, "u1-limit", x_max, rows, summary);
  return code;
}

inline int cmd_excursions(const Session& ss, double x_max, double lambda) {
  const auto rec = ss.record();
  const auto model = rec.model();
  const auto table = ss.table(model, x_max, "excursions");
  const auto report = experiments::psi_excursion_monitor(model, table, x_max, lambda);
  ResultTable rows{{"x_lo", "x_hi", "log_measure"}, {}};
  for (const auto& iv : report.intervals) rows.add({iv.lo, iv.hi, std::log(iv.hi / iv.lo)});
  const double ceiling = std::log(std::log(x_max));
  json summary{{"inputs", {{"xmax", x_max}, {"lambda", lambda}}},
               {"heuristic", true},
               {"ceiling", ceiling},
               {"total_log_measure", report.total_log_measure},
               {"intervals", report.intervals.size()}};
  const int code = verdict(summary, json{{"measure_below_ceiling", report.total_log_measure < ceiling}});
  ss.write(rec, "excursions", x_max, rows, summary);
  return code;
}

inline int cmd_zero_fit(const Session& ss, std::optional<double> t_opt) {
  const auto rec = ss.record();
  const auto zeros = rec.zero_list();
  const double t_max = t_opt.value_or(zeros.height());
  const auto fit = experiments::zero_count_fit(zeros, t_max);
  ResultTable rows{{"gamma", "count", "residual"}, {}};
  const auto pos = zeros.positive_upto(t_max);
  std::int64_t count = 0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    count += pos[i].multiplicity;
    rows.add({pos[i].gamma, count, fit.residuals[i]});
  }
  const double envelope = th::zero_fit_residual_factor * std::log(t_max);
  json summary{{"inputs", {{"tmax", t_max}}},
               {"alpha", fit.alpha},
               {"c", fit.c},
               {"max_residual", fit.max_residual},
               {"envelope", envelope}};
  const int code =
      verdict(summary, json{{"alpha_positive", fit.alpha > 0.0}, {"residual_within_envelope", fit.max_residual <= envelope}});
  ss.write(rec, "zero-fit", t_max, rows, summary);
  return code;
}

}  // namespace cli_detail

/// Entry point of the eulerlab tool. Exit 0 on success, 1 on bad input,
/// 2 when a numerical check fails. Progress goes to `log`.
inline int run_cli(int argc, const char* const* argv, std::ostream& log = std::cerr) {
  CLI::App app{"Partial Euler products of elliptic curve L-functions", "eulerlab"};
  app.require_subcommand(1);
  cli_detail::Session ss;
  ss.log = &log;
  auto& opt = ss.opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--curve", opt.curve, "curve label in the dataset")->required();
    sub->add_option("--data", opt.data, "dataset path (default: $EULERLAB_DATA)");
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--seedless", opt.seedless, "assert that no randomness is used");
    sub->add_option("--ap-table", opt.ap_table_path, "precomputed a_p CSV instead of a sweep");
  };

  double limit = 1000, x_max = 1e6, x = 500.5, s = 1.25, T = 25, T0 = 5, kappa = eulerprod::default_kappa;
  double lambda = experiments::thresholds::default_excursion_lambda, zeros_tmax = 14;
  std::optional<double> tmax_opt;
  int checkpoints = experiments::thresholds::default_checkpoints;
  std::vector<double> s_list{1.2, 1.3}, x_list{1e3, 1e4, 1e5};
  std::function<int()> action;

  auto* ap = app.add_subcommand("ap-table", "tabulate a_p and N_p");
  common(ap);
  ap->add_option("--limit", limit, "largest p")->check(CLI::Range(2.0, 4.0e9));
  ap->callback([&] { action = [&] { return cli_detail::cmd_ap_table(ss, limit); }; });

  auto* ep = app.add_subcommand("euler-product", "log partial Euler products on a checkpoint grid");
  common(ep);
  ep->add_option("--xmax", x_max)->check(CLI::Range(101.0, 4.0e9));
  ep->add_option("--s", s_list, "values of s")->expected(1, -1);
  ep->add_option("--checkpoints", checkpoints)->check(CLI::Range(2, 100000));
  ep->callback([&] { action = [&] { return cli_detail::cmd_euler_product(ss, x_max, s_list, checkpoints); }; });

  auto* ps = app.add_subcommand("psi", "psi_E at every jump point");
  common(ps);
  ps->add_option("--xmax", x_max)->check(CLI::Range(100.0, 4.0e9));
  ps->callback([&] { action = [&] { return cli_detail::cmd_psi(ss, x_max); }; });

  auto* zs = app.add_subcommand("zeros", "critical-line zeros from the AFE");
  common(zs);
  zs->add_option("--tmax", zeros_tmax)->check(CLI::Range(0.1, 50.0));
  zs->callback([&] { action = [&] { return cli_detail::cmd_zeros(ss, zeros_tmax); }; });

  auto* ec = app.add_subcommand("explicit-check", "explicit formula residual");
  common(ec);
  ec->add_option("--x", x)->check(CLI::Range(2.0, 4.0e9));
  ec->add_option("--s", s)->check(CLI::Range(1.0, 3.0));
  ec->add_option("--tmax", T, "zero cutoff T")->check(CLI::PositiveNumber);
  ec->add_option("--tmax-baseline", T0, "smaller T for the shrinkage check")->check(CLI::PositiveNumber);
  ec->callback([&] { action = [&] { return cli_detail::cmd_explicit_check(ss, x, s, T, T0); }; });

  auto* ta = app.add_subcommand("theorem-a", "term breakdown of log partial Euler products");
  common(ta);
  ta->add_option("--x", x_list, "values of x")->expected(1, -1);
  ta->add_option("--s", s_list, "values of s in (1, 1.5]")->expected(1, -1);
  ta->add_option("--tmax", tmax_opt, "zero cutoff T (default: highest stored zero)");
  ta->add_option("--kappa", kappa)->check(CLI::PositiveNumber);
  ta->callback([&] { action = [&] { return cli_detail::cmd_theorem_a(ss, x_list, s_list, tmax_opt, kappa); }; });

  auto* vb = app.add_subcommand("verify-bsd", "prod N_p/p against C (log x)^r");
  common(vb);
  vb->add_option("--xmax", x_max)->check(CLI::Range(1000.0, 4.0e9));
  vb->add_option("--checkpoints", checkpoints)->check(CLI::Range(2, 100000));
  vb->callback([&] { action = [&] { return cli_detail::cmd_verify_bsd(ss, x_max, checkpoints); }; });

  auto* me = app.add_subcommand("mertens", "second-moment constant estimate");
  common(me);
  me->add_option("--xmax", x_max)->check(CLI::Range(101.0, 4.0e9));
  me->add_option("--checkpoints", checkpoints)->check(CLI::Range(2, 100000));
  me->callback([&] { action = [&] { return cli_detail::cmd_mertens(ss, x_max, checkpoints); }; });

  auto* u1 = app.add_subcommand("u1-limit", "U_1(x) against log(1/sqrt 2)");
  common(u1);
  u1->add_option("--xmax", x_max)->check(CLI::Range(1000.0, 4.0e9));
  u1->add_option("--checkpoints", checkpoints)->check(CLI::Range(2, 100000));
  u1->callback([&] { action = [&] { return cli_detail::cmd_u1_limit(ss, x_max, checkpoints); }; });

  auto* ex = app.add_subcommand("excursions", "where psi_E exceeds lambda x (log log x)^2");
  common(ex);
  ex->add_option("--xmax", x_max)->check(CLI::Range(100.0, 4.0e9));
  ex->add_option("--lambda", lambda)->check(CLI::PositiveNumber);
  ex->callback([&] { action = [&] { return cli_detail::cmd_excursions(ss, x_max, lambda); }; });

  auto* zf = app.add_subcommand("zero-fit", "fit of the zero counting function");
  common(zf);
  zf->add_option("--tmax", tmax_opt)->check(CLI::PositiveNumber);
  zf->callback([&] { action = [&] { return cli_detail::cmd_zero_fit(ss, tmax_opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cout, log);
    return code == 0 ? exit_ok : exit_invalid;
  }
  try {
    return action();
  } catch (const numerical_error& e) {
    log << "[eulerlab] numerical failure: " << e.what() << '\n';
    return exit_check_failed;
  } catch (const std::exception& e) {
    log << "[eulerlab] error: " << e.what() << '\n';
    return exit_invalid;
  }
}

}  // namespace eulerlab::interface
