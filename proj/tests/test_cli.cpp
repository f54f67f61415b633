#include <gtest/gtest.h>

#include <sstream>

#include <json.hpp>

#include "tsirelson/cli.hpp"
#include "tsirelson/errors.hpp"

using namespace tsirelson::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_args(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double norm_value(const CliRun& r) { return nlohmann::json::parse(r.out)["value"].get<double>(); }

}  // namespace

TEST(CliNorm, Examples) {
  const CliRun a = run_args({"norm", "--family", "schreier", "--theta", "1/2", "--vector", "2:1,3:1,4:1,5:1"});
  ASSERT_EQ(a.code, kOk) << a.err;
  EXPECT_EQ(norm_value(a), 1.5);
  EXPECT_EQ(nlohmann::json::parse(a.out)["schema_version"], 1);

  const CliRun b = run_args({"norm", "--family", "finite-rank:2", "--theta", "root:n=2,q=2", "--vector", "1:1,2:1,3:1,4:1"});
  ASSERT_EQ(b.code, kOk);
  EXPECT_NEAR(norm_value(b), 2.0, 1e-12);

  const CliRun c = run_args({"norm", "--vector", "7:1"});
  ASSERT_EQ(c.code, kOk);
  EXPECT_EQ(norm_value(c), 1.0);
}

TEST(CliNorm, ExactAndCheck) {
  const CliRun r = run_args({"norm", "--vector", R"({"2":1,"3":1,"4":1,"5":1})", "--exact", "--check"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["value_exact"], "3/2");
  EXPECT_EQ(j["check"]["valid"], true);
  EXPECT_EQ(j["check"]["depth"], 1);
}

TEST(CliNorm, ExitCodes) {
  EXPECT_EQ(run_args({"norm", "--vector", "x"}).code, kParseError);
  EXPECT_EQ(run_args({"norm", "--vector", "1:1", "--theta", "2"}).code, kParseError);
  EXPECT_EQ(run_args({"norm", "--vector", "1:1", "--family", "nope"}).code, kParseError);
  EXPECT_EQ(run_args({"norm", "--vector", "1:1", "--theta", "root:n=2,q=2", "--exact"}).code, kParseError);
  EXPECT_EQ(run_args({"frobnicate"}).code, kParseError);
  EXPECT_EQ(run_args({}).code, kParseError);
  const CliRun cap = run_args({"norm", "--vector", "1:1,2:1,3:1,4:1", "--max-support", "3"});
  EXPECT_EQ(cap.code, kCapExceeded);
  EXPECT_TRUE(cap.out.empty());
  EXPECT_FALSE(cap.err.empty());
}

TEST(CliVerify, Examples) {
  const CliRun a = run_args({"verify", "step2", "--n", "2", "--theta", "root:n=2,q=2", "--m-max", "32"});
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(nlohmann::json::parse(a.out)["passed"], true);
  const CliRun b = run_args(
      {"verify", "oracle", "--family", "schreier", "--theta", "1/2", "--max-supp", "7", "--samples", "100", "--seed", "42"});
  EXPECT_EQ(b.code, kOk) << b.out;
  const CliRun c = run_args({"verify", "step1", "--n", "3", "--theta", "1/2", "--samples", "200", "--format", "csv"});
  EXPECT_EQ(c.code, kOk);
  EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 2);
  EXPECT_EQ(run_args({"verify", "step5"}).code, kParseError);
  EXPECT_EQ(run_args({"verify", "step1", "--n", "2", "--theta", "1/2"}).code, kParseError);
}

TEST(CliVerify, Deterministic) {
  const std::vector<std::string> args = {"verify", "step3", "--samples", "30", "--seed", "5", "--subsets", "5"};
  const CliRun a = run_args(args);
  const CliRun b = run_args(args);
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(CliSweep, Growth) {
  const CliRun r = run_args({"sweep", "growth", "--family", "finite-rank:2", "--theta", "root:n=2,q=2", "--m-max", "16"});
  ASSERT_EQ(r.code, kOk);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "m,norm");
  std::vector<double> values;
  while (std::getline(lines, line)) values.push_back(std::stod(line.substr(line.find(',') + 1)));
  ASSERT_EQ(values.size(), 16U);
  EXPECT_EQ(values[0], 1.0);
  EXPECT_NEAR(values[3], 2.0, 1e-12);
  EXPECT_NEAR(values[15], 4.0, 1e-12);
}

TEST(CliSweep, Constants) {
  const CliRun r = run_args({"sweep", "constants", "--n", "2", "--theta-grid", "0.55:0.95:0.1", "--samples", "40"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",true"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 5U);

  const CliRun skipped = run_args({"sweep", "constants", "--n", "2", "--theta-grid", "0.25:0.5:0.25", "--samples", "5"});
  EXPECT_EQ(skipped.code, kOk);
  EXPECT_EQ(std::count(skipped.out.begin(), skipped.out.end(), '\n'), 1);
  EXPECT_FALSE(skipped.err.empty());

  const CliRun empty = run_args({"sweep", "constants", "--n", "2"});
  EXPECT_EQ(empty.code, kOk);
  EXPECT_EQ(std::count(empty.out.begin(), empty.out.end(), '\n'), 1);
}

TEST(CliConfig, RoundTrip) {
  const std::vector<std::vector<std::string>> cases = {
      {"norm", "--vector", "1:1,2:0.5", "--exact", "--check", "--family", "union(finite-rank:2,schreier)"},
      {"verify", "step3", "--n", "3", "--seed", "9", "--subsets", "7", "--format", "csv"},
      {"sweep", "constants", "--theta-grid", "0.55:0.95:0.1", "--samples", "3", "--max-support", "20"},
  };
  for (const auto& args : cases) {
    const RunConfig config = parse_run_config(args);
    EXPECT_EQ(parse_run_config(format_run_config(config)), config);
  }
  EXPECT_THROW(parse_run_config({"norm"}), tsirelson::ParseError);
}

TEST(CliHelp, PrintsUsage) {
  const CliRun r = run_args({"--help"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("verify"), std::string::npos);
}
