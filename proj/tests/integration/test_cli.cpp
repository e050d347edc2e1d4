#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "cli_support.hpp"
#include "sutte/evaluation.hpp"

namespace sutte {
namespace {

namespace fs = std::filesystem;
using testing::CliResult;
using testing::data_dir;
using testing::run_binary;
using testing::TempDir;

std::vector<std::string> with_out(std::vector<std::string> args, const TempDir& dir) {
  args.push_back("--out");
  args.push_back(dir.path().string());
  return args;
}

CliResult run_in_data(const std::vector<std::string>& args, const TempDir& dir) {
  return run_binary(with_out(args, dir), data_dir());
}

TEST(Cli, HelpAndVersion) {
  TempDir dir;
  const auto help = run_binary({"--help"}, dir.path());
  EXPECT_EQ(help.exit_code, 0);
  EXPECT_NE(help.out.find("evaluate"), std::string::npos);
  const auto version = run_binary({"--version"}, dir.path());
  EXPECT_EQ(version.exit_code, 0);
  EXPECT_EQ(version.out, "1.0.0\n");
}

TEST(Cli, UsageErrorsExitOne) {
  TempDir dir;
  EXPECT_EQ(run_in_data({}, dir).exit_code, 1);
  EXPECT_EQ(run_in_data({"frobnicate", "--input", "fixture60.csv", "--symbol", "T"}, dir).exit_code, 1);
  EXPECT_EQ(run_in_data({"indicators", "--input", "fixture60.csv"}, dir).exit_code, 1);  // no symbol
  EXPECT_EQ(run_in_data({"indicators", "--symbol", "NEVERFETCHED"}, dir).exit_code, 1);  // no input
  EXPECT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "T", "--macd", "26,12"}, dir).exit_code, 1);
  EXPECT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "T", "--sma-window", "x"}, dir).exit_code, 1);
  EXPECT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "T", "--start", "2016-99-01"}, dir).exit_code, 1);
  EXPECT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "T", "--format", "xml"}, dir).exit_code, 1);
  EXPECT_EQ(run_in_data({"fetch", "--input", "ftp://example.com/x.csv", "--symbol", "T"}, dir).exit_code, 1);
}

TEST(Cli, DataErrorsExitTwo) {
  TempDir dir;
  const auto strict = run_in_data({"fetch", "--input", "inconsistent.csv", "--symbol", "BAD", "--strict"}, dir);
  EXPECT_EQ(strict.exit_code, 2);
  EXPECT_NE(strict.out.find("high < close"), std::string::npos);
  EXPECT_EQ(run_in_data({"indicators", "--input", "inconsistent.csv", "--symbol", "BAD", "--strict"}, dir).exit_code, 2);

  const auto lenient = run_in_data({"fetch", "--input", "inconsistent.csv", "--symbol", "BAD"}, dir);
  EXPECT_EQ(lenient.exit_code, 0);
  EXPECT_NE(lenient.out.find("errors=0"), std::string::npos);
  EXPECT_NE(lenient.out.find("row 4"), std::string::npos);

  EXPECT_EQ(run_in_data({"indicators", "--input", "missing.csv", "--symbol", "X"}, dir).exit_code, 2);
  // A window holding a single bar leaves nothing for SUTTE, SMA(5) or forecasting.
  const auto one = run_in_data(
      {"indicators", "--input", "fixture60.csv", "--symbol", "ONE", "--start", "2016-06-01", "--end", "2016-06-01"}, dir);
  EXPECT_EQ(one.exit_code, 2);
  EXPECT_NE(one.err.find("cannot compute indicators"), std::string::npos);
  EXPECT_EQ(run_in_data({"evaluate", "--input", "fixture60.csv", "--symbol", "ONE", "--start", "2016-06-01", "--end",
                         "2016-06-01"},
                        dir)
                .exit_code,
            2);
  // Weekend-only window: no bars at all.
  EXPECT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "W", "--start", "2016-06-04", "--end",
                         "2016-06-05"},
                        dir)
                .exit_code,
            2);
}

TEST(Cli, NetworkErrorsExitThree) {
  TempDir dir;
  const auto r = run_in_data({"fetch", "--input", "http://127.0.0.1:1/AALI.csv", "--symbol", "NET", "--timeout-ms", "2000"}, dir);
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, MismatchedCachedCurvesAreAnIntegrityError) {
  TempDir a;
  TempDir b;
  ASSERT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "T"}, a).exit_code, 0);
  ASSERT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "T", "--sma-window", "7"}, b).exit_code, 0);
  fs::copy_file(b.path() / "indicators" / "T.sutte_h.csv", a.path() / "indicators" / "T.sutte_h.csv",
                fs::copy_options::overwrite_existing);
  const auto r = run_in_data({"signals", "--input", "fixture60.csv", "--symbol", "T"}, a);
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("integrity error"), std::string::npos);
}

TEST(Cli, StaleCurvesFromAnotherConfigAreRecomputed) {
  TempDir dir;
  ASSERT_EQ(run_in_data({"indicators", "--input", "fixture60.csv", "--symbol", "T", "--sma-window", "7"}, dir).exit_code, 0);
  const auto r = run_in_data({"signals", "--input", "fixture60.csv", "--symbol", "T"}, dir);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("buys=14 sells=14"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir.path() / "indicators" / "T.sma_5.csv"));
}

TEST(Cli, SignalsOnCrossingFixtures) {
  TempDir dir;
  const auto a = run_in_data({"signals", "--input", "cross_down.csv", "--symbol", "FA"}, dir);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  const auto sell = testing::read_text(dir.path() / "signals" / "FA.csv");
  EXPECT_EQ(std::count(sell.begin(), sell.end(), '\n'), 4);  // two header comments, column row, one event
  EXPECT_NE(sell.find(",Sell,"), std::string::npos);
  EXPECT_EQ(sell.find(",Buy,"), std::string::npos);

  ASSERT_EQ(run_in_data({"signals", "--input", "cross_up.csv", "--symbol", "FB"}, dir).exit_code, 0);
  const auto buy = testing::read_text(dir.path() / "signals" / "FB.csv");
  EXPECT_NE(buy.find(",Buy,"), std::string::npos);
  EXPECT_EQ(buy.find(",Sell,"), std::string::npos);

  const auto mono = run_in_data({"signals", "--input", "monotone.csv", "--symbol", "M"}, dir);
  EXPECT_EQ(mono.exit_code, 0);
  EXPECT_NE(mono.out.find("buys=0 sells=0"), std::string::npos);
}

TEST(Cli, EvaluateConstantSeries) {
  TempDir dir;
  const auto r = run_in_data({"evaluate", "--input", "constant.csv", "--symbol", "C", "--format", "json"}, dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = nlohmann::json::parse(testing::read_text(dir.path() / "evaluation" / "C.json"));
  ASSERT_EQ(j["reports"].size(), 3u);
  EXPECT_EQ(j["reports"][0]["mape"], 0.0);
  EXPECT_EQ(j["reports"][1]["mse"], 0.0);
  EXPECT_EQ(j["reports"][2]["mape"], 100.0);
  EXPECT_NE(j["config"].get<std::string>().find("output_format=json"), std::string::npos);
  EXPECT_EQ(j["config_hash"].get<std::string>().size(), 16u);
}

TEST(Cli, EvaluateSingleMethod) {
  TempDir dir;
  const auto r = run_in_data({"evaluate", "--input", "fixture60.csv", "--symbol", "T", "--methods", "sutte"}, dir);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);  // header, rule, one row
  EXPECT_NE(r.out.find("SUTTE-PRED"), std::string::npos);
  EXPECT_EQ(r.out.find("SMA"), std::string::npos);
}

TEST(Cli, ConfigFileAndFlagPrecedence) {
  TempDir dir;
  const auto cfg = dir.path() / "run.conf";
  {
    std::ofstream out(cfg);
    out << "input = fixture60.csv\nsymbol = CFG\nsma_window = 9\noutput_dir = " << (dir.path() / "from_file").string()
        << "\n";
  }
  const auto r = run_binary({"indicators", "--config", cfg.string(), "--sma-window", "3"}, data_dir());
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir.path() / "from_file" / "indicators" / "CFG.sma_3.csv"));
  EXPECT_FALSE(fs::exists(dir.path() / "from_file" / "indicators" / "CFG.sma_9.csv"));
}

TEST(Cli, CacheDirFromEnvironment) {
  TempDir dir;
  const auto cache = dir.path() / "cache";
  ::setenv("SUTTE_CACHE_DIR", cache.c_str(), 1);
  const auto r = run_binary({"indicators", "--input", "fixture60.csv", "--symbol", "ENV"}, data_dir());
  ::unsetenv("SUTTE_CACHE_DIR");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(fs::exists(cache / "indicators" / "ENV.sutte_l.csv"));
}

TEST(Cli, FetchRecordsSourceForLaterCommands) {
  TempDir dir;
  ASSERT_EQ(run_in_data({"fetch", "--input", "fixture60.csv", "--symbol", "SRC"}, dir).exit_code, 0);
  EXPECT_TRUE(fs::exists(dir.path() / "raw" / "SRC.csv"));
  const auto r = run_in_data({"signals", "--symbol", "SRC"}, dir);
  EXPECT_EQ(r.exit_code, 0) << r.err;
}

TEST(Cli, NullRowsAreDroppedWithWarnings) {
  TempDir dir;
  const auto r = run_in_data({"validate", "--input", "nulls.csv", "--symbol", "N"}, dir);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("rows=8"), std::string::npos);
  EXPECT_NE(r.out.find("warnings=2"), std::string::npos);
  EXPECT_EQ(run_in_data({"evaluate", "--input", "nulls.csv", "--symbol", "N", "--methods", "sutte"}, dir).exit_code, 0);
}

TEST(Cli, PipelineIsDeterministicAndFast) {
  TempDir first;
  TempDir second;
  for (const auto& r : testing::run_pipeline(first.path())) {
    ASSERT_EQ(r.exit_code, 0) << r.err;
    EXPECT_LT(r.seconds, 5.0);
  }
  for (const auto& r : testing::run_pipeline(second.path())) ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto a = testing::snapshot(first.path());
  const auto b = testing::snapshot(second.path());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 13u);
}

TEST(Cli, PipelineMatchesGoldenFiles) {
  TempDir dir;
  for (const auto& r : testing::run_pipeline(dir.path())) ASSERT_EQ(r.exit_code, 0) << r.err;
  auto produced = testing::snapshot(dir.path());
  EXPECT_EQ(produced.at("raw/TEST.csv"), testing::read_text(data_dir() / "fixture60.csv"));
  produced.erase("raw/TEST.csv");

  const fs::path golden = SUTTE_GOLDEN_DIR;
  if (const char* update = std::getenv("SUTTE_UPDATE_GOLDEN"); update != nullptr && *update == '1') {
    fs::remove_all(golden);
    for (const auto& [rel, content] : produced) {
      fs::create_directories((golden / rel).parent_path());
      std::ofstream(golden / rel, std::ios::binary) << content;
    }
    GTEST_SKIP() << "golden files rewritten";
  }
  const auto expected = testing::snapshot(golden);
  ASSERT_EQ(produced.size(), expected.size());
  for (const auto& [rel, content] : expected) {
    ASSERT_TRUE(produced.count(rel)) << rel;
    EXPECT_EQ(produced.at(rel), content) << rel;
  }
}

}  // namespace
}  // namespace sutte
