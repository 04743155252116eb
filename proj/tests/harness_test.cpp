#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "netsens/harness.hpp"
#include "oracles.hpp"

using namespace netsens;

namespace {

ModelSpec model(Model m, std::size_t n) {
  ModelSpec spec;
  spec.model = m;
  spec.n = n;
  return spec;
}

ExperimentConfig er_config() {
  ExperimentConfig cfg;
  GraphSource src;
  src.name = "er";
  src.model = model(Model::er, 100);
  src.model->p = 0.05;
  cfg.graphs.push_back(src);
  cfg.thetas = {0.1};
  cfg.strategies = {Strategy::dc, Strategy::random};
  cfg.comparisons = {Comparison::delta};
  cfg.repetitions = 3;
  cfg.seed = 11;
  return cfg;
}

std::string to_csv(const std::vector<SensitivityRecord>& records) {
  std::ostringstream out;
  write_records_csv(out, records);
  return out.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("netsens_harness_" + name)).string();
}

std::string write_graph_file(const Graph& g, const std::string& name) {
  std::string path = temp_path(name);
  std::ofstream out(path);
  write_edge_list(out, g);
  return path;
}

SensitivityRecord record(double value, std::string graph = "g") {
  SensitivityRecord r;
  r.graph = std::move(graph);
  r.model_params = "n=1";
  r.strategy = Strategy::dc;
  r.theta = 0.3;
  r.comparison = Comparison::delta;
  r.value = value;
  return r;
}

class WorkerCount {
 public:
  explicit WorkerCount(std::size_t n) { set_worker_count(n); }
  ~WorkerCount() { set_worker_count(0); }
};

}  // namespace

TEST(RunExperiment, RecordCountForSmallGrid) {
  auto records = run_experiment(er_config());
  ASSERT_EQ(records.size(), 6u);
  for (const auto& r : records) {
    EXPECT_EQ(r.graph, "er");
    EXPECT_EQ(r.model_params, "n=100;p=0.05;nf=exact");
    EXPECT_EQ(r.theta, 0.1);
    EXPECT_EQ(r.comparison, Comparison::delta);
  }
}

TEST(RunExperiment, RecordCountIsFullProduct) {
  auto cfg = er_config();
  GraphSource ws;
  ws.name = "ws";
  ws.model = model(Model::ws, 60);
  ws.model->k = 2;
  ws.model->p_rew = 0.1;
  cfg.graphs.push_back(ws);
  cfg.thetas = {0.1, 0.2};
  cfg.comparisons = {Comparison::delta, Comparison::hd, Comparison::kl, Comparison::rho_dc};
  cfg.repetitions = 2;
  EXPECT_EQ(run_experiment(cfg).size(), 2u * 2u * 2u * 2u * 4u);
}

TEST(RunExperiment, DirectedTableBlock) {
  std::mt19937_64 rng(5);
  Graph g = oracle::random_graph(rng, 60, 0.05, true);
  ExperimentConfig cfg;
  GraphSource src;
  src.name = "directed";
  src.edge_list = write_graph_file(g, "directed.txt");
  src.directed = true;
  cfg.graphs.push_back(src);
  cfg.strategies = strategies_for(true, false);
  cfg.comparisons = {Comparison::delta, Comparison::hd};
  auto records = run_experiment(cfg);
  std::filesystem::remove(*src.edge_list);
  std::size_t delta = 0, hd = 0;
  std::set<Strategy> strategies;
  for (const auto& r : records) {
    delta += r.comparison == Comparison::delta;
    hd += r.comparison == Comparison::hd;
    strategies.insert(r.strategy);
  }
  EXPECT_EQ(delta, 60u);
  EXPECT_EQ(hd, 60u);
  EXPECT_EQ(strategies.size(), 10u);
  EXPECT_TRUE(strategies.count(Strategy::ec));
  EXPECT_FALSE(strategies.count(Strategy::random));
}

TEST(RunExperiment, RerunIsByteIdentical) {
  auto cfg = er_config();
  cfg.strategies = {Strategy::dc, Strategy::lp, Strategy::random, Strategy::pr};
  cfg.comparisons = {Comparison::delta, Comparison::hd, Comparison::rho_pr};
  EXPECT_EQ(to_csv(run_experiment(cfg)), to_csv(run_experiment(cfg)));
  auto other = cfg;
  other.seed = 12;
  EXPECT_NE(to_csv(run_experiment(cfg)), to_csv(run_experiment(other)));
}

TEST(RunExperiment, IndependentOfWorkerCount) {
  auto cfg = er_config();
  cfg.strategies = {Strategy::bc, Strategy::lp, Strategy::random};
  cfg.comparisons = {Comparison::delta, Comparison::jsd};
  cfg.thetas = {0.1, 0.3};
  std::string serial, parallel;
  {
    WorkerCount w(1);
    serial = to_csv(run_experiment(cfg));
  }
  {
    WorkerCount w(4);
    parallel = to_csv(run_experiment(cfg));
  }
  EXPECT_EQ(serial, parallel);
}

TEST(RunExperiment, ApproximateAboveThreshold) {
  auto cfg = er_config();
  cfg.exact_threshold = 50;
  cfg.register_exponent = 6;
  cfg.anf_runs = 2;
  for (const auto& r : run_experiment(cfg)) EXPECT_EQ(r.model_params, "n=100;p=0.05;nf=hyperanf");
}

TEST(RunExperiment, ExpensiveComparisonRejectedUnlessAllowed) {
  auto cfg = er_config();
  cfg.comparisons = {Comparison::rho_bc};
  EXPECT_THROW(run_experiment(cfg), invalid_argument);
  cfg.allow_expensive_comparisons = true;
  EXPECT_EQ(run_experiment(cfg).size(), 6u);
}

TEST(RunExperiment, SentinelsAreRecorded) {
  // Removing the hub of a star leaves no reachable pair.
  ExperimentConfig cfg;
  GraphSource src;
  src.name = "star";
  src.edge_list = write_graph_file(oracle::star(3), "star.txt");
  cfg.graphs.push_back(src);
  cfg.thetas = {0.3};
  cfg.strategies = {Strategy::dc};
  cfg.comparisons = {Comparison::delta, Comparison::delta_avgdist, Comparison::kl, Comparison::rho_dc};
  auto records = run_experiment(cfg);
  std::filesystem::remove(*src.edge_list);
  ASSERT_EQ(records.size(), 4u);
  EXPECT_EQ(records[0].value, kInfinity);
  EXPECT_TRUE(std::isnan(records[1].value));
  EXPECT_TRUE(std::isnan(records[2].value));
  EXPECT_TRUE(std::isnan(records[3].value));
}

TEST(ExperimentConfig, ValidationErrors) {
  auto cfg = er_config();
  cfg.thetas = {0.2, 0.1};
  EXPECT_THROW(cfg.validate(), invalid_argument);
  cfg.thetas = {0.0};
  EXPECT_THROW(cfg.validate(), invalid_argument);
  cfg.thetas = {1.0};
  EXPECT_THROW(cfg.validate(), invalid_argument);
  cfg = er_config();
  cfg.repetitions = 0;
  EXPECT_THROW(cfg.validate(), invalid_argument);
  cfg = er_config();
  cfg.graphs.clear();
  EXPECT_THROW(cfg.validate(), invalid_argument);
  cfg = er_config();
  cfg.graphs[0].edge_list = "x.txt";
  EXPECT_THROW(cfg.validate(), invalid_argument);
  cfg = er_config();
  cfg.register_exponent = 2;
  EXPECT_THROW(cfg.validate(), invalid_argument);
}

TEST(ExperimentConfig, FromJson) {
  auto j = nlohmann::json::parse(R"({
    "graphs": [
      {"name": "er", "model": "er", "n": 2426, "p": 0.0014},
      {"name": "ws", "model": "ws", "n": 2426, "k": 7, "p_rew": 0.01},
      {"name": "cf", "model": "cf", "degrees": [1, 1, 2]},
      {"edge_list": "g.txt", "directed": true}
    ],
    "thetas": [0.1, 0.3],
    "strategies": ["dc", "random"],
    "comparisons": ["delta", "hd", "rho_pr"],
    "repetitions": 20,
    "seed": 7,
    "exact_threshold": 5000,
    "symmetrize": true,
    "hyperanf": {"register_exponent": 8, "runs": 4},
    "centrality": {"damping": 0.9, "ec_max_iter": 50},
    "lp_max_rounds": 7,
    "output": "out.csv"
  })");
  auto cfg = config_from_json(j);
  ASSERT_EQ(cfg.graphs.size(), 4u);
  EXPECT_EQ(cfg.graphs[0].model->p, 0.0014);
  EXPECT_EQ(cfg.graphs[1].model->k, 7u);
  EXPECT_EQ(cfg.graphs[2].model->degrees, (std::vector<std::size_t>{1, 1, 2}));
  EXPECT_EQ(cfg.graphs[3].name, "g.txt");
  EXPECT_TRUE(cfg.graphs[3].directed);
  EXPECT_TRUE(cfg.graphs[3].symmetrize);
  EXPECT_EQ(cfg.thetas, (std::vector<double>{0.1, 0.3}));
  EXPECT_EQ(cfg.strategies, (std::vector<Strategy>{Strategy::dc, Strategy::random}));
  EXPECT_EQ(cfg.comparisons.size(), 3u);
  EXPECT_EQ(cfg.repetitions, 20u);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.exact_threshold, 5000u);
  EXPECT_EQ(cfg.register_exponent, 8);
  EXPECT_EQ(cfg.anf_runs, 4u);
  EXPECT_EQ(cfg.plan.pagerank.damping, 0.9);
  EXPECT_EQ(cfg.plan.eigenvector.max_iter, 50u);
  EXPECT_EQ(cfg.plan.lp_max_rounds, 7u);
  EXPECT_EQ(cfg.output, "out.csv");
  EXPECT_NO_THROW(cfg.validate());
}

TEST(ExperimentConfig, DefaultsFromMinimalJson) {
  auto cfg = config_from_json(nlohmann::json::parse(R"({"graphs": [{"model": "ba", "n": 50, "l": 2}]})"));
  EXPECT_EQ(cfg.thetas, (std::vector<double>{0.05, 0.10, 0.15, 0.20, 0.25, 0.30}));
  EXPECT_EQ(cfg.comparisons, (std::vector<Comparison>{Comparison::delta, Comparison::hd}));
  EXPECT_EQ(cfg.repetitions, 1u);
  EXPECT_EQ(cfg.exact_threshold, 20000u);
  EXPECT_EQ(cfg.register_exponent, 10);
  EXPECT_EQ(cfg.anf_runs, 10u);
  EXPECT_EQ(cfg.graphs[0].name, "ba");
}

TEST(ExperimentConfig, UnknownNamesRejected) {
  EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"graphs": [{"model": "sbm"}]})")), invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(
                   R"({"graphs": [{"model": "er", "n": 5}], "strategies": ["xx"]})")),
               invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::parse(
                   R"({"graphs": [{"model": "er", "n": 5}], "comparisons": ["tau"]})")),
               invalid_argument);
}

TEST(ExperimentConfig, LoadConfigErrors) {
  EXPECT_THROW(load_config("/nonexistent/config.json"), error);
  std::string path = temp_path("bad.json");
  std::ofstream(path) << "{ not json";
  EXPECT_THROW(load_config(path), parse_error);
  std::filesystem::remove(path);
}

TEST(RecordsCsv, RoundTrip) {
  auto records = run_experiment(er_config());
  records[0].value = kInfinity;
  records[1].value = std::numeric_limits<double>::quiet_NaN();
  std::string text = to_csv(records);
  EXPECT_EQ(text.substr(0, kRecordHeader.size()), kRecordHeader);
  std::istringstream in(text);
  auto back = read_records_csv(in);
  ASSERT_EQ(back.size(), records.size());
  EXPECT_EQ(back[0].value, kInfinity);
  EXPECT_TRUE(std::isnan(back[1].value));
  EXPECT_EQ(to_csv(back), text);
}

TEST(RecordsCsv, MalformedRowReportsLine) {
  std::istringstream in(std::string(kRecordHeader) + "\ng,p,dc,0.3,1,delta\n");
  try {
    read_records_csv(in);
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream bad_strategy(std::string(kRecordHeader) + "\ng,p,zz,0.3,1,delta,0.1\n");
  EXPECT_THROW(read_records_csv(bad_strategy), parse_error);
}

TEST(Summarize, SingleRecord) {
  auto rows = summarize({record(0.4)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mean, 0.4);
  EXPECT_EQ(rows[0].sd, 0.0);
  EXPECT_EQ(rows[0].count, 1u);
  EXPECT_EQ(rows[0].min, 0.4);
  EXPECT_EQ(rows[0].max, 0.4);
}

TEST(Summarize, ThreeValues) {
  auto rows = summarize({record(0.3), record(0.1), record(0.2)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].mean, 0.2, 1e-15);
  EXPECT_NEAR(rows[0].median, 0.2, 1e-15);
  EXPECT_NEAR(rows[0].sd, 0.1, 1e-15);
  EXPECT_NEAR(rows[0].q1, 0.15, 1e-15);
  EXPECT_NEAR(rows[0].q3, 0.25, 1e-15);
  EXPECT_EQ(rows[0].min, 0.1);
  EXPECT_EQ(rows[0].max, 0.3);
}

TEST(Summarize, InfinityCountedNotAveraged) {
  auto rows = summarize({record(kInfinity), record(0.1), record(0.3)});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].count, 3u);
  EXPECT_EQ(rows[0].inf_count, 1u);
  EXPECT_NEAR(rows[0].mean, 0.2, 1e-15);
  EXPECT_EQ(rows[0].max, 0.3);
}

TEST(Summarize, MissingValuesCounted) {
  auto rows = summarize({record(std::numeric_limits<double>::quiet_NaN()), record(0.5)});
  EXPECT_EQ(rows[0].count, 2u);
  EXPECT_EQ(rows[0].na_count, 1u);
  EXPECT_EQ(rows[0].mean, 0.5);
}

TEST(Summarize, GroupsInFirstAppearanceOrder) {
  auto rows = summarize({record(1, "b"), record(2, "a"), record(3, "b")});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].graph, "b");
  EXPECT_EQ(rows[0].count, 2u);
  EXPECT_EQ(rows[1].graph, "a");
}

TEST(Summarize, QuantilesAreOrdered) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<SensitivityRecord> records;
    std::size_t k = 1 + rng() % 15;
    for (std::size_t i = 0; i < k; ++i) records.push_back(record(normal(rng)));
    auto r = summarize(records)[0];
    EXPECT_LE(r.min, r.q1);
    EXPECT_LE(r.q1, r.median);
    EXPECT_LE(r.median, r.q3);
    EXPECT_LE(r.q3, r.max);
    EXPECT_GE(r.sd, 0.0);
  }
}

TEST(WriteSummary, CsvAndLongFormat) {
  auto rows = summarize({record(0.1), record(0.3)});
  std::ostringstream csv_out, long_out;
  write_summary(csv_out, rows);
  write_summary(long_out, rows, ' ');
  EXPECT_EQ(csv_out.str(),
            "graph,model_params,strategy,theta,comparison,mean,sd,min,q1,median,q3,max,count,inf_count,na_count\n"
            "g,n=1,dc,0.3,delta,0.2,0.1414213562373095,0.1,0.15,0.2,0.25,0.3,2,0,0\n");
  EXPECT_EQ(long_out.str().find(','), std::string::npos);
}
