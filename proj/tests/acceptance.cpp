// Runs every acceptance criterion at its frozen tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eulerlab/curves/ap_table.hpp"
#include "eulerlab/eulerprod/explicit_formula.hpp"
#include "eulerlab/eulerprod/prime_sums.hpp"
#include "eulerlab/experiments/bsd.hpp"
#include "eulerlab/experiments/excursions.hpp"
#include "eulerlab/experiments/mertens.hpp"
#include "eulerlab/experiments/thresholds.hpp"
#include "eulerlab/experiments/zero_fit.hpp"
#include "eulerlab/interface/cli.hpp"
#include "eulerlab/interface/dataset.hpp"
#include "eulerlab/lfunction/afe.hpp"
#include "eulerlab/lfunction/special_values.hpp"
#include "support.hpp"

using namespace eulerlab;
namespace th = experiments::thresholds;
namespace ts = testing_support;
namespace fs = std::filesystem;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void report(const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

template <class F>
void criterion(const std::string& name, F&& body) {
  try {
    std::string detail;
    const bool pass = body(detail);
    report(name, pass, detail);
  } catch (const std::exception& e) {
    report(name, false, std::string("exception: ") + e.what());
  }
}

constexpr std::uint64_t big = 1000000;

struct Curve {
  interface::CurveRecord rec;
  curves::CurveModel model;
  const curves::ApTable* table;
};

std::map<std::string, curves::ApTable> big_tables;

Curve curve(const std::string& label) {
  const auto& rec = ts::record(label);
  return {rec, rec.model(), &big_tables.at(label)};
}

lfunction::DirichletCoeffs afe_coeffs(const Curve& c) {
  return lfunction::dirichlet_coeffs(c.model, *c.table, lfunction::required_terms(c.model.conductor()));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

int main() {
  const auto& recs = ts::records();

  criterion("ap-brute-force", [&](std::string& d) {
    bool ok = true;
    double elapsed = 0;
    std::size_t checked = 0;
    for (const std::string label : {"37a1", "11a1"}) {
      const auto m = ts::model(label);
      const auto t0 = clock_type::now();
      const auto t = curves::ap_table(m, 1000, {1, 1024});
      elapsed += seconds_since(t0);
      for (const auto& e : t) {
        if (e.kind != curves::ReductionKind::good) continue;
        const auto p = static_cast<std::int64_t>(e.p);
        ok = ok && e.ap == p + 1 - ts::enumerate_points(m.ainvs(), p);
        ++checked;
      }
    }
    d = fmt("%zu good primes exact, %.3f s single-threaded (limit %.0f s)", checked, elapsed, th::ap_runtime_seconds);
    return ok && elapsed < th::ap_runtime_seconds;
  });

  {
    std::vector<curves::CurveModel> models;
    for (const auto& r : recs) models.push_back(r.model());
    const auto t0 = clock_type::now();
    auto built = curves::ap_tables(models, big);
    std::printf("info: a_p tables to 10^6 for %zu curves in %.1f s\n", models.size(), seconds_since(t0));
    for (std::size_t i = 0; i < models.size(); ++i) big_tables.emplace(models[i].label(), std::move(built[i]));
  }

  criterion("hasse-bound", [&](std::string& d) {
    std::size_t checked = 0;
    double worst = 0;
    for (const auto& r : recs) {
      for (const auto& e : big_tables.at(r.label)) {
        if (e.p > 100000 || e.kind != curves::ReductionKind::good) continue;
        worst = std::max(worst, std::abs(static_cast<double>(e.ap)) / (2.0 * std::sqrt(static_cast<double>(e.p))));
        ++checked;
      }
    }
    d = fmt("%zu (curve, p) pairs, max |a_p|/2sqrt(p) = %.6f", checked, worst);
    return worst <= 1.0;
  });

  criterion("functional-equation-and-afe", [&](std::string& d) {
    double worst_fe = 0, worst_afe = 0;
    for (const auto& r : recs) {
      const auto c = curve(r.label);
      const auto co = afe_coeffs(c);
      for (int k = 0; k <= 8; ++k) {
        const double s = 0.6 + 0.1 * k;
        const numerics::cplx a = lfunction::lambda_afe(c.model, {s, 0.0}, co).value;
        const numerics::cplx b = lfunction::lambda_afe(c.model, {2.0 - s, 0.0}, co).value;
        worst_fe = std::max(worst_fe, std::abs(a - static_cast<double>(c.model.root_number()) * b) /
                                          std::max(std::abs(a), 1e-30));
      }
      const auto full = lfunction::dirichlet_coeffs(c.model, *c.table, big);
      numerics::compensated_sum<double> acc;
      for (std::uint64_t n = full.n_max; n >= 1; --n) acc += full[n] * std::pow(static_cast<double>(n), -2.5);
      worst_afe = std::max(worst_afe, std::abs(lfunction::l_value(c.model, {2.5, 0.0}, co).real() - acc.value()));
    }
    d = fmt("max FE residual %.3g (limit %.0e); max |AFE - sum_{n<=10^6}| at s=2.5 %.3g (limit %.0e)", worst_fe,
            th::fe_residual, worst_afe, th::afe_dirichlet);
    return worst_fe <= th::fe_residual && worst_afe <= th::afe_dirichlet;
  });

  criterion("rank-recovery", [&](std::string& d) {
    bool ok = true;
    for (const auto& r : recs) {
      const auto c = curve(r.label);
      const auto v = lfunction::l_derivatives_at_1(c.model, afe_coeffs(c));
      d += fmt("%s r=%d (fixture %d) ", r.label.c_str(), v.r, r.rank);
      ok = ok && v.r == r.rank;
    }
    return ok;
  });

  criterion("explicit-formula", [&](std::string& d) {
    const auto t0 = clock_type::now();
    const auto& rec = ts::record("11a1");
    const auto m = rec.model();
    const auto zeros = rec.zero_list();
    const double x = 500.5;
    const auto t = curves::ap_table(m, std::max<std::uint64_t>(501, lfunction::required_terms(m.conductor())));
    const auto co = lfunction::dirichlet_coeffs(m, t, lfunction::required_terms(m.conductor()));
    const double r25 = eulerprod::explicit_formula_residual(m, t, zeros, co, x, 1.25, 25.0).residual;
    const double r5 = eulerprod::explicit_formula_residual(m, t, zeros, co, x, 1.25, 5.0).residual;
    const double r_abs = eulerprod::explicit_formula_residual(m, t, zeros, co, x, 2.5, 25.0).residual;
    const double elapsed = seconds_since(t0);
    d = fmt("11a1 x=500.5 s=1.25: |res(T=25)|=%.4g (limit %.2g), |res(T=5)|=%.4g; s=2.5: |res|=%.3g (limit %.0e); "
            "%.2f s",
            std::abs(r25), th::explicit_formula_residual, std::abs(r5), std::abs(r_abs),
            th::explicit_formula_residual_s25, elapsed);
    return std::abs(r25) < th::explicit_formula_residual && std::abs(r25) < std::abs(r5) &&
           std::abs(r_abs) < th::explicit_formula_residual_s25 && elapsed < th::explicit_formula_runtime_seconds;
  });

  criterion("theorem-a", [&](std::string& d) {
    bool ok = true;
    for (const std::string label : {"11a1", "37a1"}) {
      const auto c = curve(label);
      const auto zeros = c.rec.zero_list();
      const auto fit = experiments::zero_count_fit(zeros, zeros.height());
      const auto co = afe_coeffs(c);
      for (double s : {1.2, 1.3}) {
        std::vector<double> gaps;
        for (double x : {1e3, 1e4, 1e5}) {
          const auto b = eulerprod::theorem_a_rhs(c.model, *c.table, co, c.rec.special_values(), zeros, x, s,
                                                  zeros.height(), fit.density());
          const double allowed = b.err_bound + b.r_tail.value_or(0.0);
          ok = ok && b.gap() <= allowed;
          gaps.push_back(b.gap());
        }
        ok = ok && gaps.back() < gaps.front();
        d += fmt("%s s=%.1f gaps %.3g/%.3g/%.3g; ", label.c_str(), s, gaps[0], gaps[1], gaps[2]);
      }
    }
    return ok;
  });

  criterion("derivative-identity", [&](std::string& d) {
    double worst = 0;
    const double h = th::derivative_identity_step;
    for (const std::string label : {"11a1", "37a1"}) {
      const auto c = curve(label);
      for (auto [x, s] : {std::pair{100.0, 1.3}, std::pair{1000.0, 1.2}}) {
        const double fd = (eulerprod::log_partial_euler_product(c.model, *c.table, x, s + h) -
                           eulerprod::log_partial_euler_product(c.model, *c.table, x, s - h)) /
                          (2.0 * h);
        worst = std::max(worst, std::abs(fd - eulerprod::euler_product_log_derivative(c.model, *c.table, x, s)));
      }
    }
    d = fmt("max |central difference - series| %.3g (limit %.0e)", worst, th::derivative_identity);
    return worst <= th::derivative_identity;
  });

  criterion("u1-limit", [&](std::string& d) {
    bool ok = true;
    for (const std::string label : {"11a1", "37a1"}) {
      const auto c = curve(label);
      const double dev = experiments::u1_limit_check(c.model, *c.table, {1e6})[0].deviation;
      std::vector<double> med;
      for (double X : {1e4, 1e5, 1e6}) med.push_back(experiments::u1_block_median(*c.table, X));
      ok = ok && dev < th::u1_deviation && med[1] < med[0] && med[2] < med[1];
      d += fmt("%s |U1(10^6)+log2/2|=%.4g medians %.3g/%.3g/%.3g; ", label.c_str(), dev, med[0], med[1], med[2]);
    }
    return ok;
  });

  criterion("mertens", [&](std::string& d) {
    bool ok = true;
    for (const auto& r : recs) {
      const auto c = curve(r.label);
      const double diff = std::abs(experiments::mertens_b_estimate(c.model, *c.table, 1e6) -
                                   experiments::mertens_b_estimate(c.model, *c.table, 1e5));
      ok = ok && diff < th::mertens_stabilization;
      d += fmt("%s %.3g; ", r.label.c_str(), diff);
    }
    return ok;
  });

  criterion("bsd-product", [&](std::string& d) {
    const auto c11 = curve("11a1");
    const double dev11 =
        std::abs(experiments::bsd_product_scan(c11.model, *c11.table, c11.rec.special_values(), {1e6}).rows[0].deviation);

    // timed end to end, including the a_p sweep for 37a1
    const auto t0 = clock_type::now();
    const auto m37 = ts::model("37a1");
    const auto t37 = curves::ap_table(m37, big);
    const auto v37 = ts::record("37a1").special_values();
    std::vector<double> med, med_lo, med_hi;
    for (double X : {1e3, 1e4, 1e5, 1e6}) {
      med.push_back(experiments::bsd_block_median(t37, v37, X));
      med_lo.push_back(experiments::bsd_block_median(t37, v37, X, v37.r - 1));
      med_hi.push_back(experiments::bsd_block_median(t37, v37, X, v37.r + 1));
    }
    const double elapsed = seconds_since(t0);

    bool decreasing = true, selective = true;
    for (std::size_t i = 0; i < med.size(); ++i) {
      if (i) decreasing = decreasing && med[i] < med[i - 1];
      selective = selective && med_lo[i] > med[i] && med_hi[i] > med[i];
    }
    d = fmt("11a1 |dev(10^6)|=%.4g (limit %.2f); 37a1 medians %.3g/%.3g/%.3g/%.3g; r-1 %.3g, r+1 %.3g at 10^6; "
            "37a1 pipeline %.1f s on %u worker(s)",
            dev11, th::bsd_deviation_rank0, med[0], med[1], med[2], med[3], med_lo[3], med_hi[3], elapsed,
            numerics::default_workers());
    return dev11 <= th::bsd_deviation_rank0 && decreasing && selective && elapsed <= 600.0;
  });

  criterion("psi-envelope", [&](std::string& d) {
    bool ok = true;
    const double ceiling = std::log(std::log(1e6));
    for (const auto& r : recs) {
      const auto c = curve(r.label);
      double worst = 0;
      for (const auto& pt : eulerprod::psi_steps(c.model, *c.table, 1e6)) {
        const double lx = std::log(pt.x);
        worst = std::max(worst, std::abs(pt.psi) / (pt.x * lx * lx));
      }
      const double mu =
          experiments::psi_excursion_monitor(c.model, *c.table, 1e6, th::excursion_lambda).total_log_measure;
      ok = ok && worst <= th::psi_envelope && mu < ceiling;
      d += fmt("%s max|psi|/x log^2 x=%.3g measure(lambda=5)=%.3g; ", r.label.c_str(), worst, mu);
    }
    d += fmt("ceiling loglog 10^6=%.3f (heuristic)", ceiling);
    return ok;
  });

  criterion("cli-determinism", [&](std::string& d) {
    const std::string data = ts::fixture_path();
    const std::vector<std::vector<std::string>> runs = {
        {"ap-table", "--curve", "389a1", "--limit", "100000"},
        {"euler-product", "--curve", "37a1", "--xmax", "100000", "--s", "1.1", "1.25", "1.5"},
        {"psi", "--curve", "11a1", "--xmax", "100000"},
        {"zeros", "--curve", "11a1", "--tmax", "14"},
        {"explicit-check", "--curve", "11a1", "--x", "500.5", "--s", "1.25", "--tmax", "25"},
        {"theorem-a", "--curve", "37a1", "--x", "1000", "10000", "100000"},
        {"verify-bsd", "--curve", "37a1", "--xmax", "100000"},
        {"mertens", "--curve", "5077a1", "--xmax", "100000"},
        {"u1-limit", "--curve", "11a1", "--xmax", "100000"},
        {"excursions", "--curve", "389a1", "--xmax", "100000", "--lambda", "0.05"},
        {"zero-fit", "--curve", "11a1"},
    };
    const auto root = fs::temp_directory_path() / "eulerlab_acceptance_determinism";
    fs::remove_all(root);
    bool ok = true;
    std::size_t files = 0;
    for (const auto& base : runs) {
      std::vector<std::string> seen;
      std::vector<int> codes;
      for (const std::string w : {"1", "4", "16"}) {
        const auto dir = root / (base[0] + "_" + w);
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--data", data, "--out", dir.string(), "--workers", w});
        std::vector<const char*> argv{"eulerlab"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream log;
        codes.push_back(interface::run_cli(static_cast<int>(argv.size()), argv.data(), log));
        std::string all;
        if (fs::exists(dir)) {
          std::vector<fs::path> names;
          for (const auto& e : fs::directory_iterator(dir)) names.push_back(e.path());
          std::sort(names.begin(), names.end());
          for (const auto& p : names) all += p.filename().string() + '\n' + slurp(p);
          if (w == "1") files += names.size();
        }
        seen.push_back(all);
      }
      const bool same = !seen[0].empty() && seen[0] == seen[1] && seen[0] == seen[2] && codes[0] == codes[1] &&
                        codes[0] == codes[2] && codes[0] != interface::exit_invalid;
      if (!same) d += base[0] + " differs; ";
      ok = ok && same;
    }
    fs::remove_all(root);
    d += fmt("%zu subcommands, %zu output files each compared across 1/4/16 workers", runs.size(), files);
    return ok;
  });

  std::printf("%s: %d criterion(s) failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
