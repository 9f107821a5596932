#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TWISTOR_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = ::pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path tmp(const std::string& name) { return fs::temp_directory_path() / ("twistor_cli_" + std::to_string(::getpid()) + "_" + name); }

fs::path write(const std::string& name, const std::string& body) {
  const auto p = tmp(name);
  std::ofstream(p) << body;
  return p;
}

const std::string kGolden = std::string(TWISTOR_SOURCE_DIR) + "/tests/golden/";

}  // namespace

TEST(Cli, CountA1ZetaFile) {
  const auto f = write("a1.json", R"({"family":"A","rank":1,"zeta":[["1"],["0"],["0"]]})");
  const auto r = run("count --zeta " + f.string());
  ASSERT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j.at("report").at("q1"), 2);
  EXPECT_EQ(j.at("report").at("q2"), 2);
}

TEST(Cli, CountMatchesGolden) {
  for (const char* name : {"a2_rank2", "a3_rank3"}) {
    const auto r = run("count --zeta " + kGolden + name + ".zeta.json");
    ASSERT_EQ(r.code, 0);
    std::ifstream in(kGolden + name + ".json");
    EXPECT_EQ(json::parse(r.out).at("report"), json::parse(in)) << name;
  }
}

TEST(Cli, InputErrorsExitTwo) {
  const auto bad = write("bad.json", R"({"family":"A","rank":1,"zeta":[["1/0"],["0"],["0"]]})");
  EXPECT_EQ(run("count --zeta " + bad.string()).code, 2);
  const auto inadm = write("inadm.json", R"({"family":"A","rank":2,"zeta":[["1","-1"],["0","0"],["0","0"]]})");
  EXPECT_EQ(run("count --zeta " + inadm.string()).code, 2);
  EXPECT_EQ(run("count --zeta /nonexistent/file.json").code, 2);
  EXPECT_EQ(run("f1 --family B --rank 2").code, 2);
  EXPECT_EQ(run("f1 --family E --rank 5").code, 2);
  EXPECT_EQ(run("f1 --family A --rank 1").code, 2);
  EXPECT_EQ(run("nonsense").code, 2);
}

TEST(Cli, BudgetRefusalExitsThree) { EXPECT_EQ(run("f1 --family E --rank 8").code, 3); }

TEST(Cli, SolverValues) {
  auto r = run("f1 --family A --rank 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("result").at("value"), 3);
  r = run("f2 --family A --rank 3 --mode geometric");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("result").at("value"), 5);
}

TEST(Cli, SampledCountCsvIsDeterministic) {
  const std::string args = "count --family A --rank 3 --rank-class 3 --samples 50 --seed 7 --format csv";
  const auto a = run(args), b = run(args + " --jobs 2");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 51);
  EXPECT_EQ(a.out.rfind("family,rank,seed_index,rank_zeta,q1,q2,s_count,t_count,bounds_ok\n", 0), 0u);
}

TEST(Cli, CacheHitReturnsSameReport) {
  const auto dir = tmp("cache");
  fs::remove_all(dir);
  const std::string args = "verify theorem12 --family A --rank 2 --samples 4 --seed 1 --cache " + dir.string();
  const auto a = run(args);
  ASSERT_EQ(a.code, 0);
  ASSERT_FALSE(fs::is_empty(dir));
  const auto b = run(args);
  EXPECT_EQ(a.out, b.out);
  // a corrupted entry is discarded and recomputed
  for (const auto& e : fs::directory_iterator(dir)) std::ofstream(e.path(), std::ios::app) << "junk";
  const auto c = run(args);
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(a.out, c.out);
  fs::remove_all(dir);
}

TEST(Cli, DecompAndValidate) {
  const auto plane = write("plane.json", R"({"family":"A","rank":2,"plane":[["1","0"],["0","1"]]})");
  const auto out = tmp("induced.json");
  ASSERT_EQ(run("decomp --plane " + plane.string() + " --out " + out.string()).code, 0);
  EXPECT_EQ(run("validate --witness " + out.string()).code, 0);

  const auto w = tmp("f2.json");
  ASSERT_EQ(run("f2 --family A --rank 3 --mode geometric --out " + w.string()).code, 0);
  EXPECT_EQ(run("validate --witness " + w.string() + " --mode geometric").code, 0);

  const auto bad = write("badwit.json",
                         R"({"family":"A","rank":2,"kind":"type1","pieces":[[1,4],[2,3]],"s":2,"t":0})");
  const auto r = run("validate --witness " + bad.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(json::parse(r.out).at("violation").get<std::string>().find("union"), std::string::npos);
}

TEST(Cli, RootsAndSemicont) {
  auto r = run("roots build --family E --rank 8");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("system").at("roots").size(), 240u);
  r = run("semicont --family A --rank 2 --seed 3 --trials 20");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).at("ok").get<bool>());
}
