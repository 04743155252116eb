#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "netsens/centrality.hpp"
#include "netsens/compare.hpp"
#include "netsens/csv.hpp"
#include "netsens/edge_list.hpp"
#include "netsens/error.hpp"
#include "netsens/generators.hpp"
#include "netsens/graph.hpp"
#include "netsens/neighborhood.hpp"
#include "netsens/parallel.hpp"
#include "netsens/removal.hpp"
#include "netsens/rng.hpp"

namespace netsens {

enum class Comparison {
  delta, delta_avgdist, delta_reachable, kl, jsd, hd, rho_bc, rho_cc, rho_dc, rho_ec, rho_pr
};

inline constexpr std::array<Comparison, 11> kAllComparisons = {
    Comparison::delta, Comparison::delta_avgdist, Comparison::delta_reachable, Comparison::kl,
    Comparison::jsd,   Comparison::hd,            Comparison::rho_bc,          Comparison::rho_cc,
    Comparison::rho_dc, Comparison::rho_ec,       Comparison::rho_pr};

constexpr std::string_view to_string(Comparison c) noexcept {
  switch (c) {
    case Comparison::delta: return "delta";
    case Comparison::delta_avgdist: return "delta_avgdist";
    case Comparison::delta_reachable: return "delta_reachable";
    case Comparison::kl: return "kl";
    case Comparison::jsd: return "jsd";
    case Comparison::hd: return "hd";
    case Comparison::rho_bc: return "rho_bc";
    case Comparison::rho_cc: return "rho_cc";
    case Comparison::rho_dc: return "rho_dc";
    case Comparison::rho_ec: return "rho_ec";
    case Comparison::rho_pr: return "rho_pr";
  }
  return "?";
}

inline std::optional<Comparison> parse_comparison(std::string_view s) {
  for (Comparison c : kAllComparisons)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

/// Centrality behind a rank-correlation comparison.
constexpr std::optional<Measure> comparison_measure(Comparison c) noexcept {
  switch (c) {
    case Comparison::rho_bc: return Measure::bc;
    case Comparison::rho_cc: return Measure::cc;
    case Comparison::rho_dc: return Measure::dc;
    case Comparison::rho_ec: return Measure::ec;
    case Comparison::rho_pr: return Measure::pr;
    default: return std::nullopt;
  }
}

/// bc and cc are too costly to recompute for every modified graph; they are
/// rejected as comparison methods unless explicitly allowed.
constexpr bool is_expensive(Comparison c) noexcept {
  return c == Comparison::rho_bc || c == Comparison::rho_cc;
}

constexpr bool needs_distribution(Comparison c) noexcept {
  return c == Comparison::kl || c == Comparison::jsd || c == Comparison::hd;
}

/// One input graph of an experiment: a file or a random model.
struct GraphSource {
  std::string name;
  std::optional<std::string> edge_list;
  bool directed = false;
  bool symmetrize = false;
  std::optional<ModelSpec> model;
  /// Directedness of the cf degree-source file (total degree is used).
  bool directed_degrees = false;
};

struct ExperimentConfig {
  std::vector<GraphSource> graphs;
  std::vector<double> thetas{0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  /// Empty means every strategy valid for the graph's directedness.
  std::vector<Strategy> strategies;
  std::vector<Comparison> comparisons{Comparison::delta, Comparison::hd};
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  std::size_t exact_threshold = 20000;
  int register_exponent = 10;
  std::size_t anf_runs = 10;
  bool include_zero_distance = false;
  bool allow_expensive_comparisons = false;
  PlanOptions plan{};
  std::string output;

  void validate() const {
    if (graphs.empty()) throw invalid_argument("config: no graphs");
    if (thetas.empty()) throw invalid_argument("config: empty theta grid");
    for (std::size_t i = 0; i < thetas.size(); ++i) {
      if (!(thetas[i] > 0.0 && thetas[i] < 1.0)) throw invalid_argument("config: theta values must lie in (0, 1)");
      if (i > 0 && !(thetas[i] > thetas[i - 1])) throw invalid_argument("config: theta grid must be strictly increasing");
    }
    if (repetitions < 1) throw invalid_argument("config: repetitions must be at least 1");
    if (comparisons.empty()) throw invalid_argument("config: no comparisons");
    for (Comparison c : comparisons)
      if (is_expensive(c) && !allow_expensive_comparisons)
        throw invalid_argument("config: " + std::string(to_string(c)) +
                               " is excluded as a comparison method (set allow_expensive_comparisons)");
    hll::check_exponent(register_exponent);
    if (anf_runs < 1) throw invalid_argument("config: hyperanf runs must be at least 1");
    for (const auto& g : graphs) {
      if (g.edge_list.has_value() == g.model.has_value())
        throw invalid_argument("config: graph '" + g.name + "' needs exactly one of edge_list or model");
      if (g.model && g.model->model != Model::cf) g.model->validate();
    }
  }
};

struct SensitivityRecord {
  std::string graph;
  std::string model_params;
  Strategy strategy = Strategy::random;
  double theta = 0.0;
  std::uint64_t seed = 0;
  Comparison comparison = Comparison::delta;
  /// +inf for unbounded results, NaN when the comparison is undefined.
  double value = 0.0;
};

struct SummaryRow {
  std::string graph;
  std::string model_params;
  std::string strategy;
  double theta = 0.0;
  std::string comparison;
  double mean = 0.0, sd = 0.0, min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
  std::size_t count = 0;
  std::size_t inf_count = 0;
  std::size_t na_count = 0;
};

// --- configuration -------------------------------------------------------

namespace detail {

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

inline ModelSpec model_from_json(const nlohmann::json& j) {
  ModelSpec spec;
  auto tag = j.at("model").get<std::string>();
  auto model = parse_model(tag);
  if (!model) throw invalid_argument("config: unknown model '" + tag + "'");
  spec.model = *model;
  spec.n = get_or<std::size_t>(j, "n", 0);
  spec.p = get_or<double>(j, "p", 0.0);
  spec.l = get_or<std::size_t>(j, "l", 0);
  spec.k = get_or<std::size_t>(j, "k", 0);
  spec.p_rew = get_or<double>(j, "p_rew", 0.0);
  if (spec.model == Model::cf) {
    if (j.contains("degrees")) {
      spec.degrees = j.at("degrees").get<std::vector<std::size_t>>();
      spec.degree_source = "inline";
    } else {
      spec.degree_source = j.at("degrees_from").get<std::string>();
    }
  }
  return spec;
}

}  // namespace detail

/// Reads the JSON config document (schema in README). Relative file paths
/// are taken as given.
inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  bool global_sym = detail::get_or<bool>(j, "symmetrize", false);
  for (const auto& gj : j.at("graphs")) {
    GraphSource src;
    if (gj.contains("edge_list")) {
      src.edge_list = gj.at("edge_list").get<std::string>();
      src.directed = detail::get_or<bool>(gj, "directed", false);
      src.symmetrize = detail::get_or<bool>(gj, "symmetrize", global_sym);
    }
    if (gj.contains("model")) src.model = detail::model_from_json(gj);
    src.name = detail::get_or<std::string>(
        gj, "name", src.edge_list ? *src.edge_list : std::string(to_string(src.model->model)));
    src.directed_degrees = detail::get_or<bool>(gj, "degrees_directed", false);
    cfg.graphs.push_back(std::move(src));
  }
  if (j.contains("thetas")) cfg.thetas = j.at("thetas").get<std::vector<double>>();
  if (j.contains("strategies")) {
    cfg.strategies.clear();
    for (const auto& s : j.at("strategies")) {
      auto st = parse_strategy(s.get<std::string>());
      if (!st) throw invalid_argument("config: unknown strategy '" + s.get<std::string>() + "'");
      cfg.strategies.push_back(*st);
    }
  }
  if (j.contains("comparisons")) {
    cfg.comparisons.clear();
    for (const auto& c : j.at("comparisons")) {
      auto cmp = parse_comparison(c.get<std::string>());
      if (!cmp) throw invalid_argument("config: unknown comparison '" + c.get<std::string>() + "'");
      cfg.comparisons.push_back(*cmp);
    }
  }
  cfg.repetitions = detail::get_or<std::size_t>(j, "repetitions", cfg.repetitions);
  cfg.seed = detail::get_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.exact_threshold = detail::get_or<std::size_t>(j, "exact_threshold", cfg.exact_threshold);
  cfg.include_zero_distance = detail::get_or<bool>(j, "include_zero_distance", false);
  cfg.allow_expensive_comparisons = detail::get_or<bool>(j, "allow_expensive_comparisons", false);
  if (j.contains("hyperanf")) {
    const auto& h = j.at("hyperanf");
    cfg.register_exponent = detail::get_or<int>(h, "register_exponent", cfg.register_exponent);
    cfg.anf_runs = detail::get_or<std::size_t>(h, "runs", cfg.anf_runs);
  }
  if (j.contains("centrality")) {
    const auto& c = j.at("centrality");
    cfg.plan.pagerank.damping = detail::get_or<double>(c, "damping", cfg.plan.pagerank.damping);
    cfg.plan.pagerank.tol = detail::get_or<double>(c, "tol", cfg.plan.pagerank.tol);
    cfg.plan.pagerank.max_iter = detail::get_or<std::size_t>(c, "max_iter", cfg.plan.pagerank.max_iter);
    cfg.plan.eigenvector.tol = detail::get_or<double>(c, "ec_tol", cfg.plan.eigenvector.tol);
    cfg.plan.eigenvector.max_iter = detail::get_or<std::size_t>(c, "ec_max_iter", cfg.plan.eigenvector.max_iter);
  }
  cfg.plan.lp_max_rounds = detail::get_or<std::size_t>(j, "lp_max_rounds", cfg.plan.lp_max_rounds);
  cfg.output = detail::get_or<std::string>(j, "output", "");
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    return config_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("config: ") + e.what(), 0);
  }
}

// --- experiment ------------------------------------------------------------

namespace detail {

/// Everything computed once per source-graph instance.
struct PreparedGraph {
  std::string name;
  std::string params;
  Graph graph;
  NeighborhoodFunction nf;
  std::optional<SpDistribution> sp;
  std::map<Measure, CentralityVector> centralities;
};

inline NeighborhoodFunction neighborhood_for(const Graph& g, const ExperimentConfig& cfg, bool exact,
                                             std::uint64_t seed) {
  if (exact) return exact_neighborhood_function(g);
  return hyperanf(g, cfg.register_exponent, cfg.anf_runs, seed);
}

inline std::optional<SpDistribution> distribution_or_none(const NeighborhoodFunction& nf, bool include_zero) {
  try {
    return sp_distribution(nf, include_zero);
  } catch (const invalid_argument&) {
    return std::nullopt;
  }
}

inline bool use_exact(const ExperimentConfig& cfg, const Graph& g) { return g.n() <= cfg.exact_threshold; }

inline void prepare(PreparedGraph& p, const ExperimentConfig& cfg, std::uint64_t seed) {
  bool exact = use_exact(cfg, p.graph);
  p.nf = neighborhood_for(p.graph, cfg, exact, derive_seed(seed, {hash_string("anf")}));
  bool want_sp = std::any_of(cfg.comparisons.begin(), cfg.comparisons.end(), needs_distribution);
  if (want_sp) p.sp = sp_distribution(p.nf, cfg.include_zero_distance);
  for (Comparison c : cfg.comparisons)
    if (auto m = comparison_measure(c))
      p.centralities.emplace(*m, compute_centrality(p.graph, *m, cfg.plan.pagerank, cfg.plan.eigenvector));
}

inline double compare_one(Comparison c, const PreparedGraph& base, const Subgraph& mod,
                          const NeighborhoodFunction& nf_mod, const std::optional<SpDistribution>& sp_mod,
                          const ExperimentConfig& cfg, std::map<Measure, CentralityVector>& mod_cent) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  switch (c) {
    case Comparison::delta:
      return mod.graph.n() < 2 ? nan : delta_harmonic(base.nf, nf_mod);
    case Comparison::delta_avgdist:
      return delta_avg_distance(base.nf, nf_mod).value_or(nan);
    case Comparison::delta_reachable:
      return delta_reachable(base.nf, nf_mod);
    case Comparison::kl:
      return sp_mod ? kl_divergence(*base.sp, *sp_mod) : nan;
    case Comparison::jsd:
      return sp_mod ? jensen_shannon_distance(*base.sp, *sp_mod) : nan;
    case Comparison::hd:
      return sp_mod ? hellinger_distance(*base.sp, *sp_mod) : nan;
    default: break;
  }
  Measure m = *comparison_measure(c);
  if (mod.graph.n() < 2) return nan;
  auto it = mod_cent.find(m);
  if (it == mod_cent.end()) {
    if (m == Measure::ec && mod.graph.m() == 0) return nan;
    it = mod_cent.emplace(m, compute_centrality(mod.graph, m, cfg.plan.pagerank, cfg.plan.eigenvector)).first;
  }
  auto rho = spearman_rho(base.centralities.at(m), it->second, mod.original_id);
  return rho.value_or(nan);
}

}  // namespace detail

/// Seed of one (graph, repetition) instance; also the value recorded in the
/// seed column.
inline std::uint64_t instance_seed(std::uint64_t base, std::size_t graph_index, std::size_t rep) {
  return derive_seed(base, {graph_index, rep});
}

/// Runs the full remove-and-compare pipeline.
///
/// Work is split into (graph instance, strategy, theta) units executed on the
/// worker pool; the returned records are ordered by graph, repetition,
/// strategy, theta and comparison as listed in the config, and are identical
/// for any worker count. Generated graphs are redrawn for every repetition;
/// loaded graphs are shared and only the stochastic strategies vary.
inline std::vector<SensitivityRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t reps = cfg.repetitions;
  const std::size_t graphs = cfg.graphs.size();

  // Resolve loaded graphs and CF degree sequences up front.
  std::vector<std::optional<Graph>> loaded(graphs);
  std::vector<std::optional<ModelSpec>> models(graphs);
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    const auto& src = cfg.graphs[gi];
    if (src.edge_list) {
      Graph g = load_edge_list_file(*src.edge_list, src.directed).graph;
      if (src.symmetrize && g.directed()) g = symmetrize(g);
      loaded[gi] = std::move(g);
    } else {
      ModelSpec spec = *src.model;
      if (spec.model == Model::cf && spec.degrees.empty())
        spec.degrees = degree_sequence(load_edge_list_file(spec.degree_source, src.directed_degrees).graph);
      spec.validate();
      models[gi] = std::move(spec);
    }
  }

  // Strategies per graph.
  std::vector<std::vector<Strategy>> strategies(graphs);
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    bool directed = loaded[gi] ? loaded[gi]->directed() : false;
    strategies[gi] = cfg.strategies.empty() ? strategies_for(directed) : cfg.strategies;
    for (Strategy s : strategies[gi]) {
      auto m = measure_of(s);
      if (m && requires_directed(*m) && !directed)
        throw invalid_argument("strategy " + std::string(to_string(s)) + " needs a directed graph ('" +
                               cfg.graphs[gi].name + "')");
    }
  }

  // Stage 1: prepared source graphs. Loaded graphs are prepared once.
  struct InstanceKey {
    std::size_t graph;
    std::size_t rep;
  };
  std::vector<InstanceKey> instances;
  for (std::size_t gi = 0; gi < graphs; ++gi)
    for (std::size_t r = 0; r < reps; ++r) instances.push_back({gi, r});

  std::vector<std::shared_ptr<detail::PreparedGraph>> prepared(instances.size());
  std::vector<std::shared_ptr<detail::PreparedGraph>> shared(graphs);
  for (std::size_t gi = 0; gi < graphs; ++gi) {
    if (!loaded[gi]) continue;
    auto p = std::make_shared<detail::PreparedGraph>();
    p->name = csv::sanitize(cfg.graphs[gi].name);
    p->params = loaded[gi]->directed() ? "directed" : "undirected";
    if (cfg.graphs[gi].symmetrize && cfg.graphs[gi].directed) p->params = "symmetrized";
    p->graph = std::move(*loaded[gi]);
    p->params += detail::use_exact(cfg, p->graph) ? ";nf=exact" : ";nf=hyperanf";
    detail::prepare(*p, cfg, instance_seed(cfg.seed, gi, 0));
    shared[gi] = std::move(p);
  }
  parallel_for(instances.size(), [&](std::size_t i) {
    auto [gi, r] = instances[i];
    if (shared[gi]) {
      prepared[i] = shared[gi];
      return;
    }
    std::uint64_t seed = instance_seed(cfg.seed, gi, r);
    auto p = std::make_shared<detail::PreparedGraph>();
    p->name = csv::sanitize(cfg.graphs[gi].name);
    p->params = csv::sanitize(models[gi]->params());
    p->graph = generate(*models[gi], derive_seed(seed, {hash_string("graph")}));
    p->params += detail::use_exact(cfg, p->graph) ? ";nf=exact" : ";nf=hyperanf";
    detail::prepare(*p, cfg, seed);
    prepared[i] = std::move(p);
  });

  // Stage 2: removal plans, one per (instance, strategy). Deterministic plans
  // of shared graphs are computed once.
  struct PlanKey {
    std::size_t instance;
    std::size_t strategy;
  };
  std::vector<PlanKey> plan_keys;
  std::vector<std::size_t> plan_offset(instances.size() + 1, 0);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (std::size_t s = 0; s < strategies[instances[i].graph].size(); ++s) plan_keys.push_back({i, s});
    plan_offset[i + 1] = plan_keys.size();
  }
  std::vector<std::shared_ptr<const RemovalPlan>> plans(plan_keys.size());
  auto plan_seed = [&](std::size_t i, Strategy s) {
    return derive_seed(instance_seed(cfg.seed, instances[i].graph, instances[i].rep),
                       {hash_string(to_string(s))});
  };
  auto reuses_plan = [&](std::size_t k) {
    auto [i, s] = plan_keys[k];
    return shared[instances[i].graph] && instances[i].rep > 0 &&
           !is_stochastic(strategies[instances[i].graph][s]);
  };
  parallel_for(plan_keys.size(), [&](std::size_t k) {
    if (reuses_plan(k)) return;
    auto [i, s] = plan_keys[k];
    Strategy st = strategies[instances[i].graph][s];
    plans[k] = std::make_shared<const RemovalPlan>(make_plan(prepared[i]->graph, st, plan_seed(i, st), cfg.plan));
  });
  for (std::size_t k = 0; k < plan_keys.size(); ++k)
    if (reuses_plan(k)) {
      std::size_t first_rep_instance = plan_keys[k].instance - instances[plan_keys[k].instance].rep;
      plans[k] = plans[plan_offset[first_rep_instance] + plan_keys[k].strategy];
    }

  // Stage 3: one unit per (plan, theta).
  const std::size_t per_unit = cfg.comparisons.size();
  const std::size_t units = plan_keys.size() * cfg.thetas.size();
  std::vector<SensitivityRecord> records(units * per_unit);
  parallel_for(units, [&](std::size_t u) {
    std::size_t k = u / cfg.thetas.size();
    std::size_t ti = u % cfg.thetas.size();
    auto [i, s] = plan_keys[k];
    const auto& base = *prepared[i];
    const auto& plan = *plans[k];
    Strategy st = strategies[instances[i].graph][s];
    std::uint64_t seed = instance_seed(cfg.seed, instances[i].graph, instances[i].rep);

    auto outcome = apply_removal(base.graph, plan, ModificationLevel(cfg.thetas[ti]));
    const Subgraph& mod = outcome.modified;
    bool exact = detail::use_exact(cfg, base.graph);
    auto nf_mod = detail::neighborhood_for(mod.graph, cfg, exact,
                                           derive_seed(seed, {hash_string(to_string(st)), ti}));
    std::optional<SpDistribution> sp_mod;
    if (base.sp) sp_mod = detail::distribution_or_none(nf_mod, cfg.include_zero_distance);
    std::map<Measure, CentralityVector> mod_cent;
    for (std::size_t c = 0; c < per_unit; ++c) {
      SensitivityRecord& rec = records[u * per_unit + c];
      rec.graph = base.name;
      rec.model_params = base.params;
      rec.strategy = st;
      rec.theta = cfg.thetas[ti];
      rec.seed = seed;
      rec.comparison = cfg.comparisons[c];
      rec.value = detail::compare_one(cfg.comparisons[c], base, mod, nf_mod, sp_mod, cfg, mod_cent);
    }
  });
  return records;
}

// --- CSV -----------------------------------------------------------------------

inline constexpr std::string_view kRecordHeader = "graph,model_params,strategy,theta,seed,comparison,value";

inline void write_records_csv(std::ostream& out, const std::vector<SensitivityRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records)
    out << r.graph << ',' << r.model_params << ',' << to_string(r.strategy) << ','
        << csv::format_double(r.theta) << ',' << r.seed << ',' << to_string(r.comparison) << ','
        << csv::format_double(r.value) << '\n';
}

inline std::vector<SensitivityRecord> read_records_csv(std::istream& in) {
  std::vector<SensitivityRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (line_no == 1 && line.starts_with("graph,")) continue;
    auto f = csv::split(line);
    if (f.size() != 7) throw parse_error("expected 7 fields, found " + std::to_string(f.size()), line_no);
    SensitivityRecord r;
    r.graph = std::string(f[0]);
    r.model_params = std::string(f[1]);
    auto st = parse_strategy(f[2]);
    if (!st) throw parse_error("unknown strategy '" + std::string(f[2]) + "'", line_no);
    r.strategy = *st;
    r.theta = csv::parse_double(f[3], line_no);
    try {
      r.seed = std::stoull(std::string(f[4]));
    } catch (const std::exception&) {
      throw parse_error("bad seed '" + std::string(f[4]) + "'", line_no);
    }
    auto cmp = parse_comparison(f[5]);
    if (!cmp) throw parse_error("unknown comparison '" + std::string(f[5]) + "'", line_no);
    r.comparison = *cmp;
    r.value = csv::parse_double(f[6], line_no);
    out.push_back(std::move(r));
  }
  return out;
}

namespace detail {

/// Linear-interpolation quantile of sorted data.
inline double quantile(const std::vector<double>& sorted, double q) {
  double pos = q * static_cast<double>(sorted.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(pos));
  std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace detail

/// Groups records by (graph, model_params, strategy, theta, comparison) in
/// order of first appearance. Moments and quantiles cover the finite values
/// only; infinite and undefined values are counted separately.
inline std::vector<SummaryRow> summarize(const std::vector<SensitivityRecord>& records) {
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> values;
  std::map<std::tuple<std::string, std::string, std::string, double, std::string>, std::size_t> index;
  for (const auto& r : records) {
    auto key = std::make_tuple(r.graph, r.model_params, std::string(to_string(r.strategy)), r.theta,
                               std::string(to_string(r.comparison)));
    auto [it, inserted] = index.try_emplace(key, rows.size());
    if (inserted) {
      SummaryRow row;
      row.graph = r.graph;
      row.model_params = r.model_params;
      row.strategy = std::get<2>(key);
      row.theta = r.theta;
      row.comparison = std::get<4>(key);
      rows.push_back(std::move(row));
      values.emplace_back();
    }
    SummaryRow& row = rows[it->second];
    ++row.count;
    if (std::isnan(r.value)) ++row.na_count;
    else if (std::isinf(r.value)) ++row.inf_count;
    else values[it->second].push_back(r.value);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& v = values[i];
    auto& row = rows[i];
    if (v.empty()) {
      row.mean = row.sd = row.min = row.q1 = row.median = row.q3 = row.max = nan;
      continue;
    }
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    row.mean = sum / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - row.mean) * (x - row.mean);
    row.sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    row.min = v.front();
    row.max = v.back();
    row.q1 = detail::quantile(v, 0.25);
    row.median = detail::quantile(v, 0.5);
    row.q3 = detail::quantile(v, 0.75);
  }
  return rows;
}

/// Summary table; `separator` ',' gives CSV, ' ' a whitespace-separated
/// long format for plotting tools.
inline void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows, char separator = ',') {
  const char* cols[] = {"graph", "model_params", "strategy", "theta",  "comparison", "mean",     "sd",
                        "min",   "q1",           "median",   "q3",     "max",        "count",    "inf_count",
                        "na_count"};
  for (std::size_t i = 0; i < std::size(cols); ++i) out << (i ? std::string(1, separator) : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.graph << separator << r.model_params << separator << r.strategy << separator
        << csv::format_double(r.theta) << separator << r.comparison;
    for (double x : {r.mean, r.sd, r.min, r.q1, r.median, r.q3, r.max}) out << separator << csv::format_double(x);
    out << separator << r.count << separator << r.inf_count << separator << r.na_count << '\n';
  }
}

}  // namespace netsens
