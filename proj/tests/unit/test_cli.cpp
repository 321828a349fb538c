#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DELTASIEVE_CLI) + " " + args;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json body(const Run& r) { return json::parse(r.out); }

}  // namespace

TEST(Cli, CountXOne) {
  const auto r = run("count --X 1 --mode exact");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = body(r);
  EXPECT_EQ(j["rows"][0]["count_or_sum"].get<double>(), 4.0);
  EXPECT_EQ(j["meta"]["command"], "count");
  EXPECT_TRUE(j["meta"].contains("version"));
  EXPECT_TRUE(j["meta"].contains("wall_clock_seconds"));
  EXPECT_EQ(j["meta"]["flags"]["mode"], "exact");
}

TEST(Cli, CountCsvHeaderFirst) {
  const auto r = run("count --X 1,2 --mode smoothed --format csv 2>/dev/null");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("X,mode,count_or_sum,main_lo,main_hi,residual,residual_over_X7,seconds\r\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 3);
}

TEST(Cli, CountGuardIsUsageError) {
  const auto r = run("count --X 9 2>&1");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("'X'"), std::string::npos) << r.out;
}

TEST(Cli, BalancePreset) {
  const auto r = run("balance --preset paper");
  ASSERT_EQ(r.code, 0);
  const auto j = body(r);
  EXPECT_EQ(j["exponent"], "184/27");
  EXPECT_EQ(j["t"], "124/27");
  EXPECT_EQ(j["kappa"], "16/31");
}

TEST(Cli, BalanceDropActiveTerm) {
  const auto r = run("balance --preset paper --drop 16-2t");
  ASSERT_EQ(r.code, 0);
  const auto j = body(r);
  EXPECT_NE(j["exponent"], "184/27");
}

TEST(Cli, BalanceTermsFile) {
  const std::string path = testing::TempDir() + "single_term.json";
  std::ofstream(path) << R"({"terms": [{"x": 6, "label": "six"}]})";
  const auto r = run("balance --terms " + path);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(body(r)["exponent"], "6");

  std::ofstream(path) << "{not json";
  EXPECT_EQ(run("balance --terms " + path + " 2>/dev/null").code, 2);
}

TEST(Cli, ConstantOverlap) {
  const auto r = run("constant --theorem 1 --theorem 2 --prime-bound 100000");
  ASSERT_EQ(r.code, 0);
  const auto j = body(r);
  EXPECT_TRUE(j["overlap"].get<bool>());
  EXPECT_LT(j["results"][1]["width"].get<double>(), 1e-9);
}

TEST(Cli, VerifyDensity) {
  const auto r = run("verify --suite density");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = body(r);
  EXPECT_TRUE(j["ok"].get<bool>());
  bool seen = false;
  for (const auto& c : j["suites"][0]["checks"]) seen = seen || c["name"] == "one_third";
  EXPECT_TRUE(seen);
}

TEST(Cli, VerifyIsDeterministic) {
  auto a = body(run("verify --suite arith --seed 42"));
  auto b = body(run("verify --suite arith --seed 42"));
  a.erase("meta");
  b.erase("meta");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Cli, PerturbedFormulaFails) {
  const auto r = run("verify --suite expsum --perturb exptrans 2>&1 >/dev/null");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("(exptrans)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("m="), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("count --X 1 --bogus 2>/dev/null").code, 2);
  EXPECT_EQ(run("verify --suite nope 2>/dev/null").code, 2);
  EXPECT_EQ(run("2>/dev/null").code, 2);
  EXPECT_EQ(run("--version").code, 0);
}
