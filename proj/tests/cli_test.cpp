#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "netsens/edge_list.hpp"
#include "netsens/harness.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = NETSENS_CLI_PATH;
const fs::path kSamples = NETSENS_SAMPLES_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("netsens_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  /// Runs the CLI with `args`; stdout and stderr go to files in the test dir.
  int run(const std::string& args) {
    std::string cmd = "\"" + kCli + "\" " + args + " >\"" + path("stdout") + "\" 2>\"" + path("stderr") + "\"";
    int status = std::system(cmd.c_str());
    return status == 0 ? 0 : 1;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, ModifyStarByDegree) {
  ASSERT_EQ(run("modify --graph \"" + (kSamples / "star.txt").string() + "\" --strategy dc --theta 0.3 -o " +
                path("mod.txt")),
            0)
      << read("stderr");
  std::string text = read("mod.txt");
  std::size_t isolated = 0, edges = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind("#@isolated", 0) == 0)
      ++isolated;
    else if (!line.empty() && line[0] != '#')
      ++edges;
  }
  EXPECT_EQ(isolated, 3u);
  EXPECT_EQ(edges, 0u);
}

TEST_F(Cli, ModifyWritesIdMapAndPlan) {
  ASSERT_EQ(run("modify -g \"" + (kSamples / "karate_like.txt").string() + "\" -s bc -t 0.2 -o " + path("m.txt") +
                " --id-map " + path("map.csv") + " --plan " + path("plan.csv")),
            0)
      << read("stderr");
  EXPECT_EQ(read("map.csv").rfind("survivor_id,original_label\n", 0), 0u);
  EXPECT_FALSE(read("plan.csv").empty());
  std::ifstream in(path("m.txt"));
  auto lg = netsens::load_edge_list(in, false);
  EXPECT_EQ(lg.graph.n(), 5u);
}

TEST_F(Cli, GenerateIsDeterministic) {
  std::string args = "generate --model ws --n 2426 --k 7 --prew 0.01 --seed 1 -o ";
  ASSERT_EQ(run(args + path("a.txt")), 0) << read("stderr");
  ASSERT_EQ(run(args + path("b.txt")), 0) << read("stderr");
  std::string a = read("a.txt");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, read("b.txt"));
  ASSERT_EQ(run("generate --model ws --n 2426 --k 7 --prew 0.01 --seed 2 -o " + path("c.txt")), 0);
  EXPECT_NE(a, read("c.txt"));
}

TEST_F(Cli, GenerateConfigurationModelFromGraph) {
  ASSERT_EQ(run("generate --model cf --degrees-from \"" + (kSamples / "karate_like.txt").string() +
                "\" --seed 3 -o " + path("cf.txt")),
            0)
      << read("stderr");
  std::ifstream in(path("cf.txt"));
  auto lg = netsens::load_edge_list(in, false);
  EXPECT_LE(lg.graph.m(), 7u);
}

TEST_F(Cli, ExperimentThenSummarize) {
  std::ofstream(path("c.json")) << R"({
    "graphs": [{"name": "er", "model": "er", "n": 80, "p": 0.06}],
    "thetas": [0.1, 0.3],
    "strategies": ["dc", "random"],
    "comparisons": ["delta", "hd"],
    "repetitions": 2,
    "seed": 5
  })";
  ASSERT_EQ(run("experiment --config " + path("c.json") + " --out " + path("r.csv")), 0) << read("stderr");
  std::ifstream records_in(path("r.csv"));
  auto records = netsens::read_records_csv(records_in);
  EXPECT_EQ(records.size(), 2u * 2u * 2u * 2u);

  ASSERT_EQ(run("summarize " + path("r.csv") + " -o " + path("s.csv")), 0) << read("stderr");
  std::istringstream summary(read("s.csv"));
  std::string header;
  std::getline(summary, header);
  EXPECT_EQ(header.rfind("graph,model_params,strategy,theta,comparison,mean,sd", 0), 0u);
  std::size_t rows = 0;
  for (std::string line; std::getline(summary, line);) ++rows;
  EXPECT_EQ(rows, 8u);

  ASSERT_EQ(run("summarize " + path("r.csv")), 0);
  EXPECT_EQ(read("stdout"), read("s.csv"));
}

TEST_F(Cli, ExperimentOverridesAndThreadCap) {
  std::ofstream(path("c.json")) << R"({"graphs": [{"name": "ba", "model": "ba", "n": 60, "l": 2}]})";
  std::string args = "experiment -c " + path("c.json") + " --reps 2 --thetas 0.2 --strategies pr lp --comparisons delta";
  ASSERT_EQ(run("--threads 1 " + args + " -o " + path("one.csv")), 0) << read("stderr");
  ASSERT_EQ(run("--threads 3 " + args + " -o " + path("three.csv")), 0) << read("stderr");
  EXPECT_EQ(read("one.csv"), read("three.csv"));
  std::ifstream in(path("one.csv"));
  EXPECT_EQ(netsens::read_records_csv(in).size(), 4u);
}

TEST_F(Cli, ExperimentSketchOverrides) {
  std::ofstream(path("c.json")) << R"({"graphs": [{"name": "er", "model": "er", "n": 50, "p": 0.1}],
                                       "thetas": [0.2], "strategies": ["dc"], "comparisons": ["jsd"]})";
  ASSERT_EQ(run("experiment -c " + path("c.json") + " --exact-threshold 10 --b 6 --runs 2 --include-zero-distance -o " +
                path("r.csv")),
            0)
      << read("stderr");
  std::ifstream in(path("r.csv"));
  auto records = netsens::read_records_csv(in);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].model_params, "n=50;p=0.1;nf=hyperanf");
  EXPECT_NE(run("experiment -c " + path("c.json") + " --b 2"), 0);
}

TEST_F(Cli, MeasureNeighborhoodAndCentrality) {
  std::string graph = "\"" + (kSamples / "karate_like.txt").string() + "\"";
  ASSERT_EQ(run("measure -g " + graph + " -m bc"), 0) << read("stderr");
  EXPECT_NE(read("stdout").find("c,6"), std::string::npos);
  ASSERT_EQ(run("measure -g " + graph + " -m nf"), 0) << read("stderr");
  EXPECT_FALSE(read("stdout").empty());
}

TEST_F(Cli, ErrorsExitNonzero) {
  EXPECT_NE(run(""), 0);
  EXPECT_NE(run("modify --bogus"), 0);
  EXPECT_NE(run("modify -g /nonexistent.txt -s dc -t 0.3"), 0);
  EXPECT_NE(run("modify -g \"" + (kSamples / "star.txt").string() + "\" -s nope -t 0.3"), 0);
  EXPECT_NE(run("modify -g \"" + (kSamples / "star.txt").string() + "\" -s dc -t 1.5"), 0);
  EXPECT_NE(run("generate --model ba --n 5 --l 9"), 0);
  std::ofstream(path("bad.json")) << R"({"graphs": [{"model": "er", "n": 10}], "comparisons": ["rho_bc"]})";
  EXPECT_NE(run("experiment -c " + path("bad.json")), 0);
  EXPECT_NE(read("stderr").find("error:"), std::string::npos);
}
