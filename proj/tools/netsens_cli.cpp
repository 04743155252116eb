#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netsens/netsens.hpp"

namespace {

using namespace netsens;

/// Output target: a file when a path is given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw error("cannot write '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) return std::cout.flush(), void();
    file_->close();
    if (!*file_) throw error("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct GraphInput {
  std::string path;
  bool directed = false;
  bool symmetrize = false;

  void add(CLI::App* app) {
    app->add_option("-g,--graph", path, "edge-list file")->required()->check(CLI::ExistingFile);
    app->add_flag("--directed", directed, "read edges as directed");
    app->add_flag("--symmetrize", symmetrize, "make a directed graph undirected after loading");
  }
  Graph load() const {
    auto loaded = load_edge_list_file(path, directed);
    if (loaded.dropped.loops || loaded.dropped.duplicates)
      std::cerr << "note: dropped " << loaded.dropped.loops << " self-loops and " << loaded.dropped.duplicates
                << " duplicate edges\n";
    Graph g = std::move(loaded.graph);
    if (symmetrize && g.directed()) g = netsens::symmetrize(g);
    return g;
  }
};

struct SolverFlags {
  double damping = 0.85;
  double tol = 1e-9;
  std::size_t max_iter = 200;
  double ec_tol = kEigenvectorDefaults.tol;
  std::size_t ec_max_iter = kEigenvectorDefaults.max_iter;

  void add(CLI::App* app) {
    app->add_option("--damping", damping, "PageRank damping factor")->check(CLI::Range(0.0, 1.0));
    app->add_option("--tol", tol, "PageRank L1 tolerance")->check(CLI::PositiveNumber);
    app->add_option("--max-iter", max_iter, "PageRank iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--ec-tol", ec_tol, "eigenvector tolerance")->check(CLI::PositiveNumber);
    app->add_option("--ec-max-iter", ec_max_iter, "eigenvector iteration cap")->check(CLI::PositiveNumber);
  }
  PowerIterationParams pagerank() const { return {damping, tol, max_iter}; }
  PowerIterationParams eigenvector() const { return {0.0, ec_tol, ec_max_iter}; }
};

template <typename T, typename Parse>
std::vector<T> parse_list(const std::vector<std::string>& names, Parse parse, const char* what) {
  std::vector<T> out;
  for (const auto& s : names) {
    auto v = parse(s);
    if (!v) throw invalid_argument(std::string("unknown ") + what + " '" + s + "'");
    out.push_back(*v);
  }
  return out;
}

void warn_unconverged(const CentralityVector& cv) {
  if (!cv.converged)
    std::cerr << "warning: " << to_string(cv.measure) << " did not converge within " << cv.iterations
              << " iterations\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network sensitivity to systematic vertex removal"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, std::string("worker cap (default: $") + kThreadsEnv + " or hardware)");

  // generate
  auto* gen = app.add_subcommand("generate", "draw a random graph and write it as an edge list");
  std::string gen_model, gen_degrees_from, gen_out;
  ModelSpec gen_spec;
  bool gen_degrees_directed = false;
  std::uint64_t gen_seed = 1;
  gen->add_option("--model", gen_model, "er | ba | ws | cf")->required();
  gen->add_option("--n", gen_spec.n, "vertex count");
  gen->add_option("--p", gen_spec.p, "er edge probability");
  gen->add_option("--l", gen_spec.l, "ba links per new vertex");
  gen->add_option("--k", gen_spec.k, "ws neighbors per side");
  gen->add_option("--prew", gen_spec.p_rew, "ws rewiring probability");
  gen->add_option("--degrees-from", gen_degrees_from, "cf: edge list whose degree sequence is used")
      ->check(CLI::ExistingFile);
  gen->add_flag("--degrees-directed", gen_degrees_directed, "cf: read the degree source as directed");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  // measure
  auto* mea = app.add_subcommand("measure", "centrality scores or neighborhood function of a graph");
  GraphInput mea_in;
  mea_in.add(mea);
  std::string mea_what = "nf", mea_out;
  SolverFlags mea_solver;
  mea_solver.add(mea);
  std::size_t mea_threshold = 20000, mea_runs = 10;
  int mea_b = 10;
  bool mea_exact = false, mea_approx = false;
  std::uint64_t mea_seed = 1;
  mea->add_option("-m,--measure", mea_what, "nf | bc | cc | cc_in | cc_out | dc | dc_in | dc_out | ec | pr");
  mea->add_option("--exact-threshold", mea_threshold, "use exact BFS when n is at most this");
  auto* f_exact = mea->add_flag("--exact", mea_exact, "force exact BFS");
  mea->add_flag("--hyperanf", mea_approx, "force HyperANF")->excludes(f_exact);
  mea->add_option("--b", mea_b, "HyperANF register exponent")->check(CLI::Range(hll::kMinExponent, hll::kMaxExponent));
  mea->add_option("--runs", mea_runs, "HyperANF runs")->check(CLI::PositiveNumber);
  mea->add_option("--seed", mea_seed, "HyperANF seed");
  mea->add_option("-o,--out", mea_out, "output CSV (default stdout)");

  // modify
  auto* mod = app.add_subcommand("modify", "remove vertices by a strategy up to a modification level");
  GraphInput mod_in;
  mod_in.add(mod);
  std::string mod_strategy, mod_out, mod_map, mod_plan;
  double mod_theta = 0.0;
  std::uint64_t mod_seed = 1;
  SolverFlags mod_solver;
  mod_solver.add(mod);
  std::size_t mod_lp_rounds = 100;
  mod->add_option("-s,--strategy", mod_strategy, "removal strategy")->required();
  mod->add_option("-t,--theta", mod_theta, "modification level in (0, 1)")->required();
  mod->add_option("--seed", mod_seed, "seed for lp and random");
  mod->add_option("--lp-max-rounds", mod_lp_rounds, "label propagation round cap");
  mod->add_option("-o,--out", mod_out, "modified edge list (default stdout)");
  mod->add_option("--id-map", mod_map, "write survivor_id,original_label CSV here");
  mod->add_option("--plan", mod_plan, "write the full removal plan CSV here");

  // experiment
  auto* exp = app.add_subcommand("experiment", "run a sensitivity experiment from a JSON config");
  std::string exp_config, exp_out;
  std::optional<std::size_t> exp_reps, exp_threshold, exp_runs;
  std::optional<int> exp_b;
  std::optional<std::uint64_t> exp_seed;
  std::vector<double> exp_thetas;
  std::vector<std::string> exp_strategies, exp_comparisons;
  bool exp_expensive = false, exp_zero = false;
  exp->add_option("-c,--config", exp_config, "JSON config")->required()->check(CLI::ExistingFile);
  exp->add_option("-o,--out", exp_out, "records CSV (default: config 'output' or stdout)");
  exp->add_option("--reps", exp_reps, "override repetitions");
  exp->add_option("--seed", exp_seed, "override base seed");
  exp->add_option("--exact-threshold", exp_threshold, "override exactness threshold");
  exp->add_option("--thetas", exp_thetas, "override theta grid");
  exp->add_option("--strategies", exp_strategies, "override strategy list");
  exp->add_option("--comparisons", exp_comparisons, "override comparison list");
  exp->add_option("--b", exp_b, "override HyperANF register exponent");
  exp->add_option("--runs", exp_runs, "override HyperANF runs");
  exp->add_flag("--include-zero-distance", exp_zero, "keep distance 0 in the shortest-path distribution");
  exp->add_flag("--allow-expensive", exp_expensive, "permit rho_bc and rho_cc comparisons");

  // summarize
  auto* sum = app.add_subcommand("summarize", "aggregate a records CSV into grouped statistics");
  std::string sum_in, sum_out;
  bool sum_long = false;
  sum->add_option("records", sum_in, "records CSV")->required()->check(CLI::ExistingFile);
  sum->add_option("-o,--out", sum_out, "summary CSV (default stdout)");
  sum->add_flag("--long", sum_long, "whitespace-separated output for plotting tools");

  CLI11_PARSE(app, argc, argv);

  try {
    if (threads > 0) set_worker_count(threads);

    if (gen->parsed()) {
      auto model = parse_model(gen_model);
      if (!model) throw invalid_argument("unknown model '" + gen_model + "'");
      gen_spec.model = *model;
      if (*model == Model::cf) {
        if (gen_degrees_from.empty()) throw invalid_argument("cf needs --degrees-from");
        gen_spec.degrees = degree_sequence(load_edge_list_file(gen_degrees_from, gen_degrees_directed).graph);
        gen_spec.degree_source = gen_degrees_from;
      }
      Graph g = generate(gen_spec, gen_seed);
      Sink out(gen_out);
      write_edge_list(out.stream(), g);
      out.close();
    } else if (mea->parsed()) {
      Graph g = mea_in.load();
      Sink out(mea_out);
      if (mea_what == "nf") {
        bool exact = mea_exact || (!mea_approx && g.n() <= mea_threshold);
        auto nf = exact ? exact_neighborhood_function(g) : hyperanf(g, mea_b, mea_runs, mea_seed);
        write_neighborhood_csv(out.stream(), nf);
      } else {
        auto m = parse_measure(mea_what);
        if (!m) throw invalid_argument("unknown measure '" + mea_what + "'");
        auto cv = compute_centrality(g, *m, mea_solver.pagerank(), mea_solver.eigenvector());
        warn_unconverged(cv);
        write_centrality_csv(out.stream(), g, cv);
      }
      out.close();
    } else if (mod->parsed()) {
      auto s = parse_strategy(mod_strategy);
      if (!s) throw invalid_argument("unknown strategy '" + mod_strategy + "'");
      ModificationLevel theta(mod_theta);
      Graph g = mod_in.load();
      PlanOptions opt{mod_solver.pagerank(), mod_solver.eigenvector(), mod_lp_rounds};
      auto plan = make_plan(g, *s, mod_seed, opt);
      auto outcome = apply_removal(g, plan, theta);
      std::cerr << "removed " << outcome.removed_vertices << " vertices and " << outcome.removed_edges
                << " of " << g.m() << " edges\n";
      Sink out(mod_out);
      write_edge_list(out.stream(), outcome.modified.graph);
      out.close();
      if (!mod_map.empty()) {
        Sink map(mod_map);
        write_id_map(map.stream(), outcome.modified, g);
        map.close();
      }
      if (!mod_plan.empty()) {
        Sink p(mod_plan);
        write_plan_csv(p.stream(), g, plan);
        p.close();
      }
    } else if (exp->parsed()) {
      auto cfg = load_config(exp_config);
      if (exp_reps) cfg.repetitions = *exp_reps;
      if (exp_seed) cfg.seed = *exp_seed;
      if (exp_threshold) cfg.exact_threshold = *exp_threshold;
      if (!exp_thetas.empty()) cfg.thetas = exp_thetas;
      if (!exp_strategies.empty()) cfg.strategies = parse_list<Strategy>(exp_strategies, parse_strategy, "strategy");
      if (!exp_comparisons.empty())
        cfg.comparisons = parse_list<Comparison>(exp_comparisons, parse_comparison, "comparison");
      if (exp_b) cfg.register_exponent = *exp_b;
      if (exp_runs) cfg.anf_runs = *exp_runs;
      if (exp_zero) cfg.include_zero_distance = true;
      if (exp_expensive) cfg.allow_expensive_comparisons = true;
      auto records = run_experiment(cfg);
      Sink out(exp_out.empty() ? cfg.output : exp_out);
      write_records_csv(out.stream(), records);
      out.close();
    } else if (sum->parsed()) {
      std::ifstream in(sum_in);
      if (!in) throw error("cannot open '" + sum_in + "'");
      auto rows = summarize(read_records_csv(in));
      Sink out(sum_out);
      write_summary(out.stream(), rows, sum_long ? ' ' : ',');
      out.close();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
