#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "angle_rigidity/cli/commands.hpp"

namespace fs = std::filesystem;
using namespace angle_rigidity;

namespace {

const std::string kScenarios = AR_SCENARIO_DIR;
const std::string kData = std::string(AR_SCENARIO_DIR) + "/../tests/data";

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("angle_rigidity_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Invocation run(const std::string& args, const std::string& tag) {
  const fs::path dir = scratch("log_" + tag);
  const std::string cmd = std::string(AR_CLI_PATH) + " " + args + " > " + (dir / "out").string() + " 2> " +
                          (dir / "err").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(dir / "out"), slurp(dir / "err")};
}

std::string write_scenario(const std::string& name, const std::string& body) {
  const fs::path p = scratch("scn_" + name) / (name + ".json");
  std::ofstream(p) << body;
  return p.string();
}

const std::string kShortExample1 = R"({
  "schema_version": 1, "name": "short",
  "graph": {"n": 5, "edges": [[1,2],[1,3],[1,4],[1,5],[2,3],[3,4],[4,5]]},
  "configuration": {"generator": "regular_polygon", "perturbation": {"amplitude": 0.5, "seed": 1}},
  "integrator": {"t_final": 5}
})";

}  // namespace

TEST(Cli, AnalyzePentagon) {
  const Invocation r = run("analyze --scenario " + kScenarios + "/pentagon.json", "analyze");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("angle.verdict = true"), std::string::npos);
  EXPECT_NE(r.out.find("angle.nullspace_dim = 4"), std::string::npos);
  EXPECT_NE(r.out.find("laman_assumption.holds = true"), std::string::npos);
}

TEST(Cli, AnalyzeCollinearNamesTriangle) {
  const Invocation r = run("analyze --scenario " + kScenarios + "/collinear.json", "collinear");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("angle.verdict = false"), std::string::npos);
  EXPECT_NE(r.out.find("degenerate_triangle = 1 2 3"), std::string::npos);
}

TEST(Cli, AnalyzeWritesJson) {
  const fs::path out = scratch("analyze_json");
  const Invocation r = run("analyze --scenario " + kScenarios + "/k3.json --out " + out.string(), "analyze_json");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(out / "analysis.json"));
  EXPECT_EQ(j["angle"]["nullspace_dim"], 4);
  EXPECT_EQ(slurp(out / "analysis.txt"), r.out);
}

TEST(Cli, MalformedEdgeIsValidationError) {
  const Invocation r = run("analyze --scenario " + kData + "/malformed_edge.json", "malformed");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("(0,7)"), std::string::npos) << r.err;
}

TEST(Cli, ParseErrors) {
  EXPECT_EQ(run("analyze --scenario " + write_scenario("broken", "{\"schema_version\": 1,"), "broken").code, 4);
  EXPECT_EQ(run("analyze --scenario /nonexistent/file.json", "missing").code, 4);
  EXPECT_EQ(run("frobnicate", "verb").code, 4);
  EXPECT_EQ(run("indexset --scenario " + kScenarios + "/k3.json --source nope", "source").code, 4);
}

TEST(Cli, IndexsetFanLists) {
  const Invocation minimal = run("indexset --scenario " + kScenarios + "/pentagon.json --source laman_minimal", "min");
  EXPECT_EQ(minimal.code, 0);
  EXPECT_NE(minimal.out.find("size = 6\nexpected_size = 6"), std::string::npos);
  EXPECT_NE(minimal.out.find("triples.5 = 4 1 5"), std::string::npos);
  const Invocation global = run("indexset --scenario " + kScenarios + "/pentagon.json --source laman_global", "glob");
  EXPECT_NE(global.out.find("size = 8"), std::string::npos);
  EXPECT_NE(global.out.find("= 1 2 4\n"), std::string::npos);
  EXPECT_NE(global.out.find("= 1 3 5\n"), std::string::npos);
  const Invocation k3 = run("indexset --scenario " + kScenarios + "/k3.json --source full", "k3");
  EXPECT_NE(k3.out.find("size = 3"), std::string::npos);
}

TEST(Cli, IndexsetWritesTriples) {
  const fs::path out = scratch("indexset_out");
  ASSERT_EQ(run("indexset --scenario " + kScenarios + "/pentagon_sparse.json --out " + out.string(), "ix").code, 0);
  EXPECT_EQ(slurp(out / "triples.csv"), "apex,j,k\n1,3,4\n1,4,5\n3,1,4\n4,1,5\n");
}

TEST(Cli, Algorithm1OnFlexibleIsValidationError) {
  const Invocation r = run("indexset --scenario " + kScenarios + "/collinear.json --source algorithm1", "alg1");
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, SimulateWritesOutputsDeterministically) {
  const std::string sc = write_scenario("short", kShortExample1);
  const fs::path a = scratch("sim_a"), b = scratch("sim_b");
  ASSERT_EQ(run("simulate --scenario " + sc + " --out " + a.string(), "sim_a").code, 0);
  ASSERT_EQ(run("simulate --scenario " + sc + " --out " + b.string(), "sim_b").code, 0);
  for (const char* f : {"trajectory.csv", "cost.csv", "summary.txt", "summary.json", "plot.gp"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_EQ(slurp(a / "cost.csv").substr(0, 40), "t,V_F,V_M,V,centroid_x,centroid_y,scale\n");
  const auto j = nlohmann::json::parse(slurp(a / "summary.json"));
  EXPECT_EQ(j["t_end"], 5.0);
  EXPECT_EQ(j["samples"], 51);
}

TEST(Cli, SeedOverrideChangesStart) {
  const std::string sc = write_scenario("seeded", kShortExample1);
  const fs::path a = scratch("seed_a"), b = scratch("seed_b");
  ASSERT_EQ(run("simulate --scenario " + sc + " --out " + a.string(), "seed_a").code, 0);
  ASSERT_EQ(run("simulate --scenario " + sc + " --seed-override 7 --out " + b.string(), "seed_b").code, 0);
  EXPECT_NE(slurp(a / "trajectory.csv"), slurp(b / "trajectory.csv"));
  EXPECT_NE(slurp(b / "summary.txt").find("seed = 7"), std::string::npos);
}

TEST(Cli, SimulateNeedsOut) {
  EXPECT_NE(run("simulate --scenario " + kScenarios + "/k3.json", "noout").code, 0);
}

TEST(Cli, BlowUpIsNumericalFailure) {
  const std::string sc = write_scenario("unstable", R"({
    "schema_version": 1,
    "graph": {"n": 5, "edges": [[1,2],[1,3],[1,4],[1,5],[2,3],[3,4],[4,5]]},
    "configuration": {"generator": "regular_polygon", "perturbation": {"amplitude": 0.5, "seed": 1}},
    "maneuver": {"leaders": [3,4], "displacement": [-0.5, 0]},
    "integrator": {"step": 2, "record_stride": 2, "t_final": 4000}
  })");
  const Invocation r = run("simulate --scenario " + sc + " --out " + scratch("blow").string(), "blow");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("numerical failure at t="), std::string::npos) << r.err;
}

TEST(Cli, BatchWritesPerScenarioDirectories) {
  const std::string s1 = write_scenario("batch_one", kShortExample1);
  const std::string s2 = write_scenario("batch_two", kShortExample1);
  const fs::path out = scratch("batch");
  const Invocation r = run("simulate --batch --scenario " + s1 + " --scenario " + s2 + " --out " + out.string(), "batch");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(out / "batch_one" / "cost.csv"));
  EXPECT_TRUE(fs::exists(out / "batch_two" / "cost.csv"));
  EXPECT_EQ(slurp(out / "batch_one" / "trajectory.csv"), slurp(out / "batch_two" / "trajectory.csv"));
}

TEST(Cli, Selftest) {
  const Invocation a = run("selftest", "self_a");
  const Invocation b = run("selftest", "self_b");
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("failed=0"), std::string::npos);
}

TEST(Cli, InProcessExitCodes) {
  std::ostringstream out, err;
  cli::Options opt;
  opt.scenario = kData + "/malformed_edge.json";
  EXPECT_EQ(cli::cmd_analyze(opt, out, err), cli::kValidation);
  opt.scenario = kScenarios + "/k3.json";
  EXPECT_EQ(cli::cmd_analyze(opt, out, err), cli::kOk);
}
