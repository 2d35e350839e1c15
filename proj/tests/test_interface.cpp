#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eulerlab/interface/cli.hpp"
#include "eulerlab/interface/dataset.hpp"
#include "eulerlab/interface/results.hpp"
#include "support.hpp"

using namespace eulerlab;
using namespace eulerlab::interface;
namespace ts = testing_support;
namespace fs = std::filesystem;

namespace {

const char* k11 =
    R"({"label": "11a1", "ainvs": [0, -1, 1, -10, -20], "conductor": 11, "root_number": 1, "rank": 0, )"
    R"("l_derivs": [0.2538418608559107], "zeros": [6.362613894713089, 8.603539619290755]})";
const char* k37 =
    R"({"label": "37a1", "ainvs": [0, 0, 1, -1, 0], "conductor": 37, "root_number": -1, "rank": 1, )"
    R"("l_derivs": [0.0, 0.3059997738340523], "zeros": [0.0, 5.003839368651259]})";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  if (at == std::string::npos) throw std::logic_error("pattern not found: " + from);
  return s.replace(at, from.size(), to);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("eulerlab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int cli(std::vector<std::string> args, std::string* log_out = nullptr) {
  std::vector<const char*> argv{"eulerlab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream log;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), log);
  if (log_out) *log_out = log.str();
  return code;
}

}  // namespace

TEST(Dataset, BundledFixtures) {
  const auto recs = load_dataset(ts::fixture_path());
  ASSERT_EQ(recs.size(), 4u);
  EXPECT_EQ(recs[0].label, "11a1");
  EXPECT_EQ(recs[3].label, "5077a1");
  for (const auto& r : recs) EXPECT_FALSE(r.parity_mismatch) << r.label;
  EXPECT_EQ(recs[1].zero_list().r(), 1);
  EXPECT_EQ(recs[2].line, 4u);
}

TEST(Dataset, ArrayAndJsonLinesAgree) {
  const auto a = parse_dataset(std::string("[\n") + k11 + ",\n" + k37 + "\n]\n");
  const auto b = parse_dataset(std::string(k11) + "\n\n" + k37 + "\n");
  ASSERT_EQ(a.size(), 2u);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(a[1].line, 3u);
  EXPECT_EQ(b[1].line, 3u);
  EXPECT_EQ(to_json(a[1]), to_json(b[1]));
}

TEST(Dataset, FourInvariantsIsParseError) {
  const std::string bad = replace(k37, "[0, 0, 1, -1, 0]", "[0, 0, 1, -1]");
  try {
    parse_dataset(std::string(k11) + "\n" + bad + "\n");
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.field(), "ainvs");
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Dataset, SchemaViolations) {
  EXPECT_THROW(parse_dataset(replace(k11, R"("conductor": 11)", R"("conductor": "11")")), parse_error);
  EXPECT_THROW(parse_dataset(replace(k11, R"("root_number": 1)", R"("root_number": 0)")), parse_error);
  EXPECT_THROW(parse_dataset(replace(k11, R"("label": "11a1", )", "")), parse_error);
  EXPECT_THROW(parse_dataset(replace(k11, "[0.2538418608559107]", R"(["x"])")), parse_error);
  EXPECT_THROW(parse_dataset("[{\"label\": }]"), parse_error);
  EXPECT_THROW(parse_dataset("{\"label\": \n"), parse_error);
}

TEST(Dataset, InvariantViolations) {
  EXPECT_THROW(parse_dataset(replace(k11, "[6.362613894713089, 8.603539619290755]", "[8.6, 6.3]")), validation_error);
  EXPECT_THROW(parse_dataset(replace(k37, "[0.0, 5.003839368651259]", "[5.003839368651259]")), validation_error);
  EXPECT_THROW(parse_dataset(replace(k37, "[0.0, 0.3059997738340523]", "[0.01, 0.3059997738340523]")),
               validation_error);
  EXPECT_THROW(parse_dataset(replace(k37, "[0.0, 0.3059997738340523]", "[0.0]")), validation_error);
  EXPECT_THROW(parse_dataset(replace(k11, R"("conductor": 11)", R"("conductor": 13)")), validation_error);
  EXPECT_THROW(parse_dataset(std::string(k11) + "\n" + k11 + "\n"), validation_error);
}

TEST(Dataset, ParityMismatchIsFlaggedNotFatal) {
  const auto recs = parse_dataset(replace(k37, R"("root_number": -1)", R"("root_number": 1)"));
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_TRUE(recs[0].parity_mismatch);
}

TEST(Dataset, MissingFileIsIoError) { EXPECT_THROW(load_dataset("/nonexistent/curves.json"), io_error); }

TEST(Dataset, RecordRoundTrip) {
  const auto& rec = ts::record("37a1");
  const auto back = make_record(rec.model(), rec.special_values(), rec.zero_list());
  EXPECT_EQ(to_json(back), to_json(rec));
  EXPECT_THROW(find_record(ts::records(), "99z9"), input_error);
}

TEST(Results, FormatsWithFullPrecision) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(1e6), "1000000");
  EXPECT_EQ(format_real(NAN), "nan");
  EXPECT_EQ(format_cell(Cell{std::string("a,b")}), "\"a,b\"");
  EXPECT_EQ(result_stem("37a1", "verify-bsd", 1e6), "37a1_verify-bsd_1000000");
  EXPECT_EQ(result_stem("11a1", "explicit-check", 500.5), "11a1_explicit-check_500.5");
}

TEST(Results, EmptyTableIsHeaderOnly) {
  const auto dir = scratch("empty");
  ResultTable t{{"x", "y"}, {}};
  write_results(t, dir / "t.csv", nlohmann::json{{"k", 1}});
  EXPECT_EQ(slurp(dir / "t.csv"), "x,y\n");
  EXPECT_TRUE(fs::exists(dir / "t.json"));
  EXPECT_THROW(t.add({1.0}), input_error);
}

TEST(Results, RewriteIsByteIdentical) {
  const auto dir = scratch("rewrite");
  ResultTable t{{"x", "n"}, {}};
  t.add({1.0 / 3.0, std::int64_t{7}});
  write_results(t, dir / "a.csv");
  const auto first = slurp(dir / "a.csv");
  write_results(t, dir / "a.csv");
  EXPECT_EQ(first, slurp(dir / "a.csv"));
  EXPECT_EQ(first, "x,n\n0.33333333333333331,7\n");
  EXPECT_EQ(first.find('\r'), std::string::npos);
}

TEST(Results, UnwritablePathIsIoError) {
  ResultTable t{{"x"}, {}};
  EXPECT_THROW(write_results(t, "/proc/eulerlab/none.csv"), io_error);
}

TEST(Cli, ApTable37a1) {
  const auto dir = scratch("cli_ap");
  EXPECT_EQ(cli({"ap-table", "--curve", "37a1", "--limit", "1000", "--data", ts::fixture_path(), "--out", dir.string()}),
            0);
  const auto csv = slurp(dir / "37a1_ap-table_1000.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 169);
  std::istringstream in(csv);
  const auto table = curves::read_ap_table_csv(in, ts::model("37a1"), 1000);
  EXPECT_EQ(table.size(), 168u);
  EXPECT_TRUE(fs::exists(dir / "37a1_ap-table_1000.json"));
}

TEST(Cli, UsageErrorsExitOne) {
  std::string log;
  EXPECT_EQ(cli({"ap-table", "--curve", "37a1", "--bogus"}, &log), 1);
  EXPECT_EQ(cli({}), 1);
  EXPECT_EQ(cli({"frobnicate"}), 1);
  EXPECT_EQ(cli({"--help"}), 0);
}

TEST(Cli, MissingDatasetOrCurveExitOne) {
  const auto dir = scratch("cli_missing");
  unsetenv("EULERLAB_DATA");
  std::string log;
  EXPECT_EQ(cli({"psi", "--curve", "37a1", "--xmax", "1000", "--out", dir.string()}, &log), 1);
  EXPECT_NE(log.find("EULERLAB_DATA"), std::string::npos);
  EXPECT_EQ(cli({"psi", "--curve", "99z9", "--xmax", "1000", "--data", ts::fixture_path(), "--out", dir.string()}), 1);
}

TEST(Cli, DatasetFromEnvironment) {
  const auto dir = scratch("cli_env");
  setenv("EULERLAB_DATA", ts::fixture_path().c_str(), 1);
  EXPECT_EQ(cli({"mertens", "--curve", "11a1", "--xmax", "20000", "--out", dir.string(), "--seedless"}), 0);
  unsetenv("EULERLAB_DATA");
  EXPECT_TRUE(fs::exists(dir / "11a1_mertens_20000.csv"));
}

TEST(Cli, ExplicitCheckInAbsoluteRegionPasses) {
  const auto dir = scratch("cli_ef");
  EXPECT_EQ(cli({"explicit-check", "--curve", "37a1", "--x", "500.5", "--s", "2.5", "--tmax", "25", "--data",
                 ts::fixture_path(), "--out", dir.string()}),
            0);
  const auto summary = nlohmann::json::parse(slurp(dir / "37a1_explicit-check_500.5_s2.5.json"));
  EXPECT_TRUE(summary["pass"].get<bool>());
}

TEST(Cli, ZeroFitAndApTableBypass) {
  const auto dir = scratch("cli_bypass");
  ASSERT_EQ(cli({"ap-table", "--curve", "11a1", "--limit", "5000", "--data", ts::fixture_path(), "--out", dir.string()}),
            0);
  const auto table = (dir / "11a1_ap-table_5000.csv").string();
  const auto out_a = dir / "a", out_b = dir / "b";
  ASSERT_EQ(cli({"psi", "--curve", "11a1", "--xmax", "5000", "--data", ts::fixture_path(), "--out", out_a.string()}), 0);
  ASSERT_EQ(cli({"psi", "--curve", "11a1", "--xmax", "5000", "--data", ts::fixture_path(), "--out", out_b.string(),
                 "--ap-table", table}),
            0);
  EXPECT_EQ(slurp(out_a / "11a1_psi_5000.csv"), slurp(out_b / "11a1_psi_5000.csv"));
  EXPECT_EQ(cli({"zero-fit", "--curve", "11a1", "--data", ts::fixture_path(), "--out", dir.string()}), 0);
}

TEST(Cli, OutputsIdenticalAcrossWorkerCounts) {
  const std::vector<std::vector<std::string>> runs = {
      {"verify-bsd", "--curve", "37a1", "--xmax", "20000"},
      {"theorem-a", "--curve", "11a1", "--x", "1000", "5000"},
      {"u1-limit", "--curve", "37a1", "--xmax", "20000"},
      {"excursions", "--curve", "389a1", "--xmax", "20000", "--lambda", "0.1"},
      {"euler-product", "--curve", "5077a1", "--xmax", "20000", "--s", "1.1", "1.4"},
      {"zeros", "--curve", "37a1", "--tmax", "8"},
  };
  for (const auto& base : runs) {
    std::vector<std::string> outputs;
    for (const char* w : {"1", "4", "16"}) {
      const auto dir = scratch(std::string("det_") + base[0] + "_" + w);
      auto args = base;
      args.insert(args.end(), {"--data", ts::fixture_path(), "--out", dir.string(), "--workers", w});
      const int code = cli(args);
      ASSERT_NE(code, 1) << base[0];
      std::string all;
      for (const auto& entry : fs::directory_iterator(dir)) all += entry.path().filename().string() + slurp(entry.path());
      outputs.push_back(all);
    }
    EXPECT_FALSE(outputs[0].empty()) << base[0];
    EXPECT_EQ(outputs[0], outputs[1]) << base[0];
    EXPECT_EQ(outputs[0], outputs[2]) << base[0];
  }
}
