#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vegraph/cli.hpp"

namespace vegraph {
namespace {

namespace fs = std::filesystem;

constexpr const char* kCycle8 =
    "p gcnf 8 0 8\n"
    "g a 1 2 1\ng a 2 3 2\ng a 3 4 3\ng a 4 5 4\n"
    "g a 5 6 5\ng a 6 7 6\ng a 7 8 7\ng a 8 1 8\n"
    "g c acyclic\n";

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  std::string out, err;

  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("vegraph-cli-" + std::to_string(::getpid()) + "-" +
           ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string file(const std::string& name, const std::string& content) {
    auto p = dir / name;
    std::ofstream(p) << content;
    return p.string();
  }
  std::string path(const std::string& name) { return (dir / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    out = o.str();
    err = e.str();
    return code;
  }

  std::string forced_cycle8() {
    std::string text = kCycle8;
    text.replace(text.find("p gcnf 8 0 8"), 12, "p gcnf 8 8 8");
    for (int v = 1; v <= 8; ++v) text += std::to_string(v) + " 0\n";
    return file("forced.gcnf", text);
  }
};

TEST_F(Cli, EncodeVeStats) {
  auto in = file("c8.gcnf", kCycle8);
  auto order = file("order.txt", "2\n4\n6\n8\n1\n5\n3\n7\n");
  ASSERT_EQ(run({"encode", "--in", in, "--method", "ve", "--order", "given:" + order, "--out",
                 path("c8.cnf"), "--stats", path("stats.json"), "--map", path("map.json")}),
            0)
      << err;
  auto stats = nlohmann::json::parse(slurp(path("stats.json")));
  EXPECT_EQ(stats["width"], 1);
  EXPECT_EQ(stats["added_clauses"], 15);
  EXPECT_EQ(stats["aux_vars"], 14);
  EXPECT_EQ(stats["estar"], 14);
  EXPECT_EQ(stats["delta"], 6);
  EXPECT_EQ(stats["nodes"], 8);
  EXPECT_EQ(stats["arcs"], 8);
  EXPECT_EQ(stats["ordering"], "given");
  EXPECT_EQ(stats["constraints"], nlohmann::json::array({"acyclic"}));
  EXPECT_TRUE(stats["solver_status"].is_null());
  for (const char* key : {"nodes", "arcs", "constraints", "ordering", "width", "estar", "delta",
                          "aux_vars", "added_clauses", "encode_ms", "solver_status", "solve_ms"})
    EXPECT_TRUE(stats.contains(key)) << key;

  auto cnf = parse_dimacs(slurp(path("c8.cnf")));
  EXPECT_EQ(cnf.var_count, 22);
  EXPECT_EQ(cnf.clauses.size(), 15u);
  auto aux = aux_from_json(nlohmann::json::parse(slurp(path("map.json"))));
  EXPECT_EQ(aux.at("eprime").size(), 14u);
}

TEST_F(Cli, EncodeTcToStdout) {
  auto in = file("c8.gcnf", kCycle8);
  ASSERT_EQ(run({"encode", "--in", in, "--method", "tc"}), 0) << err;
  EXPECT_EQ(parse_dimacs(out).clauses.size(), 72u);
}

TEST_F(Cli, UnknownMethodIsUsageError) {
  auto in = file("c8.gcnf", kCycle8);
  EXPECT_EQ(run({"encode", "--in", in, "--method", "magic"}), 2);
  EXPECT_NE(err.find("unknown method 'magic'"), std::string::npos);
  EXPECT_EQ(run({"encode", "--in", in, "--order", "random"}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({}), 2);
}

TEST_F(Cli, MethodMismatchIsError) {
  auto in = file("c8.gcnf", kCycle8);
  EXPECT_EQ(run({"encode", "--in", in, "--method", "explicit"}), 1);
  EXPECT_NE(err.find("does not apply"), std::string::npos);
}

TEST_F(Cli, ParseErrorReportsLine) {
  auto in = file("bad.gcnf", "p gcnf 3 0 3\ng a 1 2 3\ng a 1 2 3\n");
  EXPECT_EQ(run({"encode", "--in", in}), 1);
  EXPECT_NE(err.find("line 3: duplicate arc"), std::string::npos) << err;
  EXPECT_EQ(run({"encode", "--in", path("missing.gcnf")}), 1);
}

TEST_F(Cli, SolveGrids) {
  ASSERT_EQ(run({"gen", "grid-hc", "2", "2", "--out", path("g22.gcnf")}), 0) << err;
  ASSERT_EQ(run({"gen", "grid-hc", "3", "3", "--out", path("g33.gcnf")}), 0) << err;
  EXPECT_EQ(run({"solve", "--in", path("g22.gcnf")}), 10) << err;
  EXPECT_EQ(out, "SAT\na 1 2\na 2 4\na 3 1\na 4 3\n");
  EXPECT_EQ(run({"solve", "--in", path("g33.gcnf")}), 20) << err;
  EXPECT_EQ(out, "UNSAT\n");
}

TEST_F(Cli, SolveForcedCycleUnsat) {
  EXPECT_EQ(run({"solve", "--in", forced_cycle8()}), 20);
  EXPECT_EQ(run({"solve", "--in", forced_cycle8(), "--method", "tr"}), 20);
}

TEST_F(Cli, SolveWritesStatsAndArcs) {
  auto in = file("c8.gcnf", kCycle8);
  ASSERT_EQ(run({"solve", "--in", in, "--out", path("arcs.txt"), "--stats", path("s.json"),
                 "--seed", "3"}),
            10);
  auto stats = nlohmann::json::parse(slurp(path("s.json")));
  EXPECT_EQ(stats["solver_status"], "SAT");
  EXPECT_TRUE(stats["solve_ms"].is_number());
  auto arcs = slurp(path("arcs.txt"));
  EXPECT_LT(std::count(arcs.begin(), arcs.end(), '\n'), 8);
}

TEST_F(Cli, ConflictBudgetGivesUnknown) {
  ASSERT_EQ(run({"gen", "grid-hc", "5", "5", "--out", path("g55.gcnf")}), 0);
  EXPECT_EQ(run({"solve", "--in", path("g55.gcnf"), "--conflict-budget", "1"}), 0);
  EXPECT_EQ(out, "UNKNOWN\n");
}

TEST_F(Cli, VerifyModels) {
  auto in = file("c8.gcnf", kCycle8);
  EXPECT_EQ(run({"verify", "--in", in, "--model", file("none.txt", "v 0\n")}), 0);
  EXPECT_EQ(out, "base: pass\nacyclic: pass\n");
  EXPECT_EQ(run({"verify", "--in", in, "--model", file("all.txt", "1 2 3 4 5 6 7 8 9 -10\n")}),
            3);
  EXPECT_EQ(out, "base: pass\nacyclic: fail (cycle 1 2 3 4 5 6 7 8)\n");
  EXPECT_EQ(run({"verify", "--in", forced_cycle8(), "--model", path("none.txt")}), 3);
  EXPECT_NE(out.find("base: fail (clause 1 falsified)"), std::string::npos);
  EXPECT_EQ(run({"verify", "--in", in, "--model", file("bad.txt", "v x 0\n")}), 1);
}

TEST_F(Cli, StatsMatchesEncode) {
  ASSERT_EQ(run({"gen", "grid-hc", "5", "20", "--out", path("g.gcnf")}), 0);
  ASSERT_EQ(run({"stats", "--in", path("g.gcnf"), "--order", "mindegree"}), 0);
  auto stats = nlohmann::json::parse(out);
  EXPECT_EQ(stats["nodes"], 100);
  EXPECT_EQ(stats["arcs"], 348);
  EXPECT_LE(stats["width"].get<int>(), 6);
  EXPECT_TRUE(stats["aux_vars"].is_null());
  ASSERT_EQ(run({"encode", "--in", path("g.gcnf"), "--out", path("g.cnf"), "--stats", "-"}), 0);
  auto encoded = nlohmann::json::parse(out);
  for (const char* key : {"nodes", "arcs", "width", "estar", "delta", "ordering"})
    EXPECT_EQ(stats[key], encoded[key]) << key;
}

TEST_F(Cli, StatsCycleOfEight) {
  auto in = file("c8.gcnf", kCycle8);
  auto order = file("order.txt", "2 4 6 8 1 5 3 7\n");
  ASSERT_EQ(run({"stats", "--in", in, "--order", "given:" + order}), 0);
  auto stats = nlohmann::json::parse(out);
  EXPECT_EQ(stats["width"], 1);
  EXPECT_EQ(stats["estar"], 14);
  EXPECT_EQ(stats["delta"], 6);
  EXPECT_EQ(run({"stats", "--in", in, "--order", "given:" + file("short.txt", "1 2\n")}), 1);
}

TEST_F(Cli, GenRandom) {
  ASSERT_EQ(run({"gen", "random", "6", "9", "ereach", "4"}), 0);
  auto inst = parse_gcnf(out);
  EXPECT_EQ(inst.graph.arc_count(), 9u);
  EXPECT_EQ(inst.constraints.at(0).kind, ConstraintKind::ereach);
  EXPECT_EQ(run({"gen", "random", "6", "9", "sideways", "4"}), 2);
  EXPECT_EQ(run({"gen", "random", "3", "9", "reach", "4"}), 2);
  EXPECT_EQ(run({"gen", "grid-hc", "1", "9"}), 2);
  EXPECT_EQ(run({"gen", "grid-hc", "two", "9"}), 2);
}

TEST_F(Cli, ExternalSolverAgreesWithInternal) {
  const std::string fake = std::string("cmd:") + VEGRAPH_FAKE_SOLVER + " solve {cnf}";
  for (int seed = 1; seed <= 12; ++seed) {
    const char* kinds[] = {"acyclic", "reach", "noreach", "ereach"};
    auto gcnf = path("r.gcnf");
    ASSERT_EQ(run({"gen", "random", "6", std::to_string(4 + seed), kinds[seed % 4],
                   std::to_string(seed), "--out", gcnf}),
              0);
    int internal = run({"solve", "--in", gcnf});
    int external = run({"solve", "--in", gcnf, "--solver", fake});
    EXPECT_EQ(internal, external) << err;
    EXPECT_TRUE(internal == 10 || internal == 20);
  }
}

TEST_F(Cli, ExternalSolverFailures) {
  auto in = file("c8.gcnf", kCycle8);
  const std::string bin = VEGRAPH_FAKE_SOLVER;
  EXPECT_EQ(run({"solve", "--in", in, "--solver", "cmd:" + bin + " crash {cnf}"}), 1);
  EXPECT_NE(err.find("exited with status 1"), std::string::npos);
  EXPECT_EQ(run({"solve", "--in", in, "--solver", "cmd:" + bin + " silent {cnf}"}), 1);
  EXPECT_NE(err.find("no 's' line"), std::string::npos);
  EXPECT_EQ(run({"solve", "--in", in, "--solver", "cmd:" + bin + " liar {cnf}"}), 3);
  EXPECT_EQ(run({"solve", "--in", in, "--solver", "cmd:/nonexistent/solver {cnf}"}), 1);
  EXPECT_NE(err.find("not found"), std::string::npos);
  EXPECT_EQ(run({"solve", "--in", in, "--solver", "cmd:" + bin + " solve"}), 2);
  EXPECT_EQ(run({"solve", "--in", in, "--solver", "lingeling"}), 2);
}

TEST_F(Cli, BinaryExitCodes) {
  const std::string bin = VEGRAPH_BIN;
  auto status = [](const std::string& cmd) {
    int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status(bin + " gen grid-hc 2 2 --out " + path("g.gcnf")), 0);
  EXPECT_EQ(status(bin + " solve --in " + path("g.gcnf")), 10);
  EXPECT_EQ(status(bin + " --help"), 0);
  EXPECT_EQ(status(bin + " solve"), 2);
}

}  // namespace
}  // namespace vegraph
