#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "netsens/centrality.hpp"
#include "netsens/error.hpp"
#include "netsens/graph.hpp"
#include "netsens/rng.hpp"

namespace netsens {

enum class Strategy { bc, cc, cc_in, cc_out, dc, dc_in, dc_out, ec, pr, lp, random };

inline constexpr std::array<Strategy, 11> kAllStrategies = {
    Strategy::bc, Strategy::cc, Strategy::cc_in, Strategy::cc_out, Strategy::dc, Strategy::dc_in,
    Strategy::dc_out, Strategy::ec, Strategy::pr, Strategy::lp, Strategy::random};

constexpr std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::lp: return "lp";
    case Strategy::random: return "random";
    default: return to_string(static_cast<Measure>(static_cast<int>(s)));
  }
}

inline std::optional<Strategy> parse_strategy(std::string_view s) {
  for (Strategy st : kAllStrategies)
    if (to_string(st) == s) return st;
  return std::nullopt;
}

/// The centrality measure behind a strategy, if any.
constexpr std::optional<Measure> measure_of(Strategy s) noexcept {
  if (s == Strategy::lp || s == Strategy::random) return std::nullopt;
  return static_cast<Measure>(static_cast<int>(s));
}

constexpr bool is_stochastic(Strategy s) noexcept {
  return s == Strategy::lp || s == Strategy::random;
}

/// Strategies valid for a graph of the given directedness, in canonical order.
inline std::vector<Strategy> strategies_for(bool directed, bool include_random = true) {
  std::vector<Strategy> out;
  for (Strategy s : kAllStrategies) {
    auto m = measure_of(s);
    if (m && requires_directed(*m) && !directed) continue;
    if (s == Strategy::random && !include_random) continue;
    out.push_back(s);
  }
  return out;
}

/// Fraction of edges that vertex removal must delete; 0 <= theta < 1.
class ModificationLevel {
 public:
  constexpr ModificationLevel() = default;
  explicit ModificationLevel(double theta) : theta_(theta) {
    if (!(theta >= 0.0 && theta < 1.0))
      throw invalid_argument("modification level must lie in [0, 1), got " + std::to_string(theta));
  }
  constexpr double value() const noexcept { return theta_; }

  /// ceil(theta * m), robust to the representation error of theta.
  std::size_t edge_target(std::size_t m) const {
    double exact = theta_ * static_cast<double>(m);
    double nearest = std::round(exact);
    if (std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact)) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(exact));
  }

 private:
  double theta_ = 0.0;
};

/// A vertex deletion order for one graph.
struct RemovalPlan {
  Strategy strategy = Strategy::random;
  /// Permutation of 0..n-1, highest priority first.
  std::vector<vertex_id> order;
  /// Priority of order[i] (centrality score, external-neighbor count, or n - i
  /// for random plans).
  std::vector<double> priority;
  std::uint64_t seed = 0;
  /// cumulative_edges[k] = edges incident to order[0..k); size n + 1.
  std::vector<std::size_t> cumulative_edges;
  std::uint64_t graph_fingerprint = 0;
};

namespace detail {

inline void finish_plan(const Graph& g, RemovalPlan& plan) {
  const std::size_t n = g.n();
  std::vector<char> removed(n, 0);
  plan.cumulative_edges.assign(n + 1, 0);
  std::size_t total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    vertex_id v = plan.order[k];
    for (vertex_id w : g.out_neighbors(v)) total += !removed[w];
    if (g.directed())
      for (vertex_id w : g.in_neighbors(v)) total += !removed[w];
    removed[v] = 1;
    plan.cumulative_edges[k + 1] = total;
  }
  plan.graph_fingerprint = g.fingerprint();
}

/// Neighbors of v ignoring direction, deduplicated.
inline std::vector<vertex_id> undirected_neighbors(const Graph& g, vertex_id v) {
  auto out = g.out_neighbors(v);
  if (!g.directed()) return {out.begin(), out.end()};
  auto in = g.in_neighbors(v);
  std::vector<vertex_id> all;
  all.reserve(out.size() + in.size());
  std::set_union(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(all));
  return all;
}

}  // namespace detail

/// Vertices by descending score, ties by ascending id.
inline RemovalPlan plan_from_scores(const Graph& g, Strategy strategy, const std::vector<double>& scores) {
  RemovalPlan plan;
  plan.strategy = strategy;
  plan.order.resize(g.n());
  std::iota(plan.order.begin(), plan.order.end(), vertex_id{0});
  std::stable_sort(plan.order.begin(), plan.order.end(),
                   [&](vertex_id a, vertex_id b) { return scores[a] > scores[b]; });
  plan.priority.reserve(g.n());
  for (vertex_id v : plan.order) plan.priority.push_back(scores[v]);
  detail::finish_plan(g, plan);
  return plan;
}

/// Static centrality order: scores computed once on g.
inline RemovalPlan centrality_removal_order(const Graph& g, Measure measure,
                                            PowerIterationParams pr_params = {},
                                            PowerIterationParams ec_params = kEigenvectorDefaults) {
  auto cv = compute_centrality(g, measure, pr_params, ec_params);
  return plan_from_scores(g, static_cast<Strategy>(static_cast<int>(measure)), cv.scores);
}

struct Communities {
  /// Dense community id per vertex, numbered by first appearance in id order.
  std::vector<std::uint32_t> label;
  std::size_t count = 0;
  std::size_t rounds = 0;
  bool converged = false;
};

/// Asynchronous label propagation. Each round visits the vertices in a fresh
/// seeded random order; a vertex keeps its label when that label is among
/// the most frequent of its neighbors (direction ignored) and otherwise
/// adopts one of those labels uniformly at random. Stops once
/// every vertex holds one of its neighborhood's most frequent labels, or after
/// max_rounds.
inline Communities label_propagation(const Graph& g, std::uint64_t seed, std::size_t max_rounds = 100) {
  const std::size_t n = g.n();
  std::vector<std::vector<vertex_id>> adj;
  if (g.directed()) {
    adj.resize(n);
    for (vertex_id v = 0; v < n; ++v) adj[v] = detail::undirected_neighbors(g, v);
  }
  auto neighbors = [&](vertex_id v) -> std::span<const vertex_id> {
    if (g.directed()) return adj[v];
    return g.out_neighbors(v);
  };

  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint32_t> touched, best;
  auto rng = make_rng(seed);

  // Fills `best` with the most frequent neighbor labels of v.
  auto tally = [&](vertex_id v) {
    touched.clear();
    best.clear();
    std::uint32_t top = 0;
    for (vertex_id w : neighbors(v)) {
      std::uint32_t l = label[w];
      if (count[l]++ == 0) touched.push_back(l);
      top = std::max(top, count[l]);
    }
    for (std::uint32_t l : touched) {
      if (count[l] == top) best.push_back(l);
      count[l] = 0;
    }
    std::sort(best.begin(), best.end());
  };

  Communities out;
  std::vector<vertex_id> order(n);
  std::iota(order.begin(), order.end(), vertex_id{0});
  for (std::size_t round = 1; round <= max_rounds; ++round) {
    std::shuffle(order.begin(), order.end(), rng);
    for (vertex_id v : order) {
      tally(v);
      if (best.empty() || std::binary_search(best.begin(), best.end(), label[v])) continue;
      std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
      label[v] = best[pick(rng)];
    }
    out.rounds = round;
    bool stable = true;
    for (vertex_id v = 0; v < n && stable; ++v) {
      tally(v);
      if (!best.empty() && !std::binary_search(best.begin(), best.end(), label[v])) stable = false;
    }
    if (stable) {
      out.converged = true;
      break;
    }
  }

  std::vector<std::uint32_t> dense(n, static_cast<std::uint32_t>(-1));
  out.label.resize(n);
  for (vertex_id v = 0; v < n; ++v) {
    std::uint32_t& d = dense[label[v]];
    if (d == static_cast<std::uint32_t>(-1)) d = static_cast<std::uint32_t>(out.count++);
    out.label[v] = d;
  }
  return out;
}

/// Round-robin over communities: clusters by descending size (ties by their
/// smallest member), members by descending number of neighbors in other
/// clusters (ties by id); rank 1 of every cluster, then rank 2, and so on.
inline RemovalPlan lp_removal_order(const Graph& g, const Communities& communities) {
  const std::size_t n = g.n();
  if (communities.label.size() != n) throw invalid_argument("community labels do not cover the graph");
  std::vector<double> external(n, 0.0);
  for (vertex_id v = 0; v < n; ++v)
    for (vertex_id w : detail::undirected_neighbors(g, v))
      if (communities.label[w] != communities.label[v]) external[v] += 1.0;

  std::vector<std::vector<vertex_id>> members(communities.count);
  for (vertex_id v = 0; v < n; ++v) members.at(communities.label[v]).push_back(v);
  std::erase_if(members, [](const auto& c) { return c.empty(); });
  std::vector<vertex_id> smallest;  // members were filled in id order
  for (const auto& c : members) smallest.push_back(c.front());
  for (auto& c : members)
    std::stable_sort(c.begin(), c.end(), [&](vertex_id a, vertex_id b) { return external[a] > external[b]; });
  std::vector<std::size_t> idx(members.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (members[a].size() != members[b].size()) return members[a].size() > members[b].size();
    return smallest[a] < smallest[b];
  });

  RemovalPlan plan;
  plan.strategy = Strategy::lp;
  plan.order.reserve(n);
  for (std::size_t rank = 0; plan.order.size() < n; ++rank)
    for (std::size_t i : idx)
      if (rank < members[i].size()) {
        plan.order.push_back(members[i][rank]);
        plan.priority.push_back(external[members[i][rank]]);
      }
  detail::finish_plan(g, plan);
  return plan;
}

inline RemovalPlan lp_removal_plan(const Graph& g, std::uint64_t seed, std::size_t max_rounds = 100) {
  auto plan = lp_removal_order(g, label_propagation(g, seed, max_rounds));
  plan.seed = seed;
  return plan;
}

/// Seeded uniform permutation.
inline RemovalPlan random_removal_order(const Graph& g, std::uint64_t seed) {
  RemovalPlan plan;
  plan.strategy = Strategy::random;
  plan.seed = seed;
  plan.order.resize(g.n());
  std::iota(plan.order.begin(), plan.order.end(), vertex_id{0});
  auto rng = make_rng(seed);
  std::shuffle(plan.order.begin(), plan.order.end(), rng);
  plan.priority.resize(g.n());
  for (std::size_t i = 0; i < g.n(); ++i) plan.priority[i] = static_cast<double>(g.n() - i);
  detail::finish_plan(g, plan);
  return plan;
}

struct PlanOptions {
  PowerIterationParams pagerank{};
  PowerIterationParams eigenvector = kEigenvectorDefaults;
  std::size_t lp_max_rounds = 100;
};

inline RemovalPlan make_plan(const Graph& g, Strategy s, std::uint64_t seed, const PlanOptions& opt = {}) {
  switch (s) {
    case Strategy::lp: return lp_removal_plan(g, seed, opt.lp_max_rounds);
    case Strategy::random: return random_removal_order(g, seed);
    default: return centrality_removal_order(g, *measure_of(s), opt.pagerank, opt.eigenvector);
  }
}

struct RemovalOutcome {
  Subgraph modified;
  std::size_t removed_vertices = 0;
  std::size_t removed_edges = 0;
};

/// Number of plan vertices to delete at level theta: the shortest prefix whose
/// incident edges reach ceil(theta m).
inline std::size_t removal_prefix(const RemovalPlan& plan, std::size_t m, ModificationLevel theta) {
  std::size_t target = theta.edge_target(m);
  auto it = std::lower_bound(plan.cumulative_edges.begin(), plan.cumulative_edges.end(), target);
  return static_cast<std::size_t>(it - plan.cumulative_edges.begin());
}

/// Deletes plan vertices in order until at least ceil(theta m) edges are gone
/// and returns the induced subgraph on the survivors (isolated survivors stay).
inline RemovalOutcome apply_removal(const Graph& g, const RemovalPlan& plan, ModificationLevel theta) {
  if (plan.graph_fingerprint != g.fingerprint() || plan.order.size() != g.n())
    throw invalid_argument("removal plan was built for a different graph");
  std::size_t k = removal_prefix(plan, g.m(), theta);
  if (k >= g.n()) throw invalid_argument("modification level removes every vertex");
  std::vector<char> keep(g.n(), 1);
  for (std::size_t i = 0; i < k; ++i) keep[plan.order[i]] = 0;
  RemovalOutcome out;
  out.modified = induced_subgraph(g, keep);
  out.removed_vertices = k;
  out.removed_edges = plan.cumulative_edges[k];
  return out;
}

/// CSV with columns rank,vertex_label,priority_score,cumulative_edges_removed
/// (rank is 1-based).
inline void write_plan_csv(std::ostream& out, const Graph& g, const RemovalPlan& plan) {
  out << "rank,vertex_label,priority_score,cumulative_edges_removed\n";
  auto old = out.precision(17);
  for (std::size_t i = 0; i < plan.order.size(); ++i)
    out << i + 1 << ',' << g.label(plan.order[i]) << ',' << plan.priority[i] << ','
        << plan.cumulative_edges[i + 1] << '\n';
  out.precision(old);
}

}  // namespace netsens
