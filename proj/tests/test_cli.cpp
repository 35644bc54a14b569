#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "abcpac/bounds.hpp"
#include "abcpac/config.hpp"
#include "abcpac/trace_io.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string output;
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(ABCPAC_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) out += buf;
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Workdir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("abcpac_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  fs::path dir_;
};

TEST_F(Workdir, RunWritesArtifactsWithAnIncreasingLadder) {
  const auto r = cli("run --preset exp1 --seed 7 --out " + path("run") + " --override smc.particles=200 smc.m_policy=fixed");
  ASSERT_EQ(r.code, 0) << r.output;
  for (const char* f : {"trace.csv", "snapshots.csv", "summary.json"}) EXPECT_TRUE(fs::exists(path("run/") + f)) << f;
  std::istringstream is(slurp(path("run/trace.csv")));
  const auto trace = abcpac::read_trace_csv(is);
  ASSERT_FALSE(trace.empty());
  for (std::size_t i = 1; i < trace.steps.size(); ++i) EXPECT_GT(trace.steps[i].lambda, trace.steps[i - 1].lambda);
}

TEST_F(Workdir, RepeatedRunIsByteIdentical) {
  const std::string args = " --preset exp1 --seed 7 --override smc.particles=200 smc.m_policy=fixed --out ";
  ASSERT_EQ(cli("run" + args + path("a")).code, 0);
  ASSERT_EQ(cli("run" + args + path("b")).code, 0);
  EXPECT_EQ(slurp(path("a/trace.csv")), slurp(path("b/trace.csv")));
  EXPECT_EQ(slurp(path("a/snapshots.csv")), slurp(path("b/snapshots.csv")));
}

TEST_F(Workdir, DiscreteToySummaryReportsTheEnumerationDistance) {
  const auto r = cli("run --preset toy-discrete --out " + path("toy"));
  ASSERT_EQ(r.code, 0) << r.output;
  const auto summary = nlohmann::json::parse(slurp(path("toy/summary.json")));
  ASSERT_TRUE(summary.contains("tv_to_enumerated"));
  EXPECT_LT(summary["tv_to_enumerated"].get<double>(), 0.01);
}

TEST_F(Workdir, InvalidConfigExitsWithTwoAndALine) {
  std::ofstream(path("bad.json")) << "{\n  \"name\": \"x\",\n  \"seed\": 1,\n  \"smc\": {\"tau\": 3}\n}\n";
  const auto r = cli("run --config " + path("bad.json") + " --out " + path("o"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.output.find("line"), std::string::npos) << r.output;
  EXPECT_EQ(cli("run --preset exp1 --override smc.tau=2 --out " + path("o")).code, 2);
  EXPECT_EQ(cli("run --out " + path("o")).code, 2);
  EXPECT_EQ(cli("frobnicate").code, 2);
}

TEST_F(Workdir, DegenerateRunExitsWithThree) {
  // a handful of particles under the uniform kernel on the discrete toy: every particle but one
  // leaves the acceptance window at once
  const auto r = cli("run --preset toy-discrete --seed 2 --out " + path("o") +
                     " --override smc.particles=6 smc.kernel=uniform smc.lambda_target=100");
  EXPECT_EQ(r.code, 3) << r.output;
}

TEST_F(Workdir, BoundModes) {
  ASSERT_EQ(cli("run --preset toy-quadrature --out " + path("q") + " --override smc.particles=2000").code, 0);
  abcpac::ConstantsDocument doc;
  doc.constants = abcpac::derive_constants(abcpac::preset("exp1"));
  doc.beta_smooth = 2.0;
  std::ofstream(path("c.json")) << abcpac::serialize_constants(doc);

  const auto trace_text = slurp(path("q/trace.csv"));
  const auto rows = static_cast<std::size_t>(std::count(trace_text.begin(), trace_text.end(), '\n')) - 1;

  ASSERT_EQ(cli("bound --mode empirical --trace " + path("q/trace.csv") + " --constants " + path("c.json") +
                " --out " + path("e.csv")).code, 0);
  const auto emp = slurp(path("e.csv"));
  EXPECT_EQ(static_cast<std::size_t>(std::count(emp.begin(), emp.end(), '\n')) - 1, rows);

  ASSERT_EQ(cli("bound --mode adaptive --trace " + path("q/trace.csv") + " --constants " + path("c.json") +
                " --out " + path("a.csv")).code, 0);
  const auto ada = slurp(path("a.csv"));
  EXPECT_EQ(ada.substr(0, 4), "row,");
  std::istringstream ada_rows(ada);
  std::string row;
  std::getline(ada_rows, row);
  std::size_t selected = 0, grid = 0;
  while (std::getline(ada_rows, row)) {
    selected += row.rfind("selected,", 0) == 0;
    grid += row.rfind("grid,", 0) == 0;
  }
  EXPECT_EQ(selected, 1u);
  EXPECT_GT(grid, 0u);
  EXPECT_LE(grid, doc.beta_grid_size);

  const auto cor = cli("bound --mode cor1 --constants " + path("c.json"));
  ASSERT_EQ(cor.code, 0);
  const auto terms = abcpac::corollary1_terms(doc.constants);
  std::istringstream is(cor.output);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "name,value");
  std::size_t matched = 0;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    const std::string name = line.substr(0, comma);
    const double value = std::stod(line.substr(comma + 1));
    for (const auto& a : terms.addends) {
      if (a.name == name) {
        EXPECT_EQ(value, a.value) << name;
        ++matched;
      }
    }
    if (name == "total") EXPECT_EQ(value, terms.total);
  }
  EXPECT_EQ(matched, terms.addends.size());

  EXPECT_EQ(cli("bound --mode nonparam --constants " + path("c.json")).code, 0);
  EXPECT_EQ(cli("bound --mode empirical --constants " + path("c.json")).code, 2);
  EXPECT_EQ(cli("bound --mode bogus --trace " + path("q/trace.csv") + " --constants " + path("c.json")).code, 2);
}

TEST_F(Workdir, ExperimentOneAggregateShape) {
  const auto r = cli("experiment exp1 --seeds 1,2 --out " + path("x") +
                     " --override smc.particles=60 smc.lambda_target=2 smc.m_policy=fixed");
  ASSERT_EQ(r.code, 0) << r.output;
  std::istringstream is(slurp(path("x/exp1_posterior_mean_errors.csv")));
  std::string line;
  std::getline(is, line);
  std::map<std::string, int> per_key;
  while (std::getline(is, line)) {
    std::stringstream ss(line);
    std::string seed, kernel, param;
    std::getline(ss, seed, ',');
    std::getline(ss, kernel, ',');
    std::getline(ss, param, ',');
    ++per_key[kernel + "/" + param];
  }
  EXPECT_EQ(per_key.size(), 8u);
  for (const auto& [k, n] : per_key) EXPECT_EQ(n, 2) << k;
}

}  // namespace
