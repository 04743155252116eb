#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "netsens/error.hpp"
#include "netsens/graph.hpp"
#include "netsens/neighborhood.hpp"
#include "netsens/parallel.hpp"

namespace netsens {

enum class Measure { bc, cc, cc_in, cc_out, dc, dc_in, dc_out, ec, pr };

inline constexpr std::array<Measure, 9> kAllMeasures = {
    Measure::bc, Measure::cc, Measure::cc_in, Measure::cc_out, Measure::dc,
    Measure::dc_in, Measure::dc_out, Measure::ec, Measure::pr};

constexpr std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::bc: return "bc";
    case Measure::cc: return "cc";
    case Measure::cc_in: return "cc_in";
    case Measure::cc_out: return "cc_out";
    case Measure::dc: return "dc";
    case Measure::dc_in: return "dc_in";
    case Measure::dc_out: return "dc_out";
    case Measure::ec: return "ec";
    case Measure::pr: return "pr";
  }
  return "?";
}

inline std::optional<Measure> parse_measure(std::string_view s) {
  for (Measure m : kAllMeasures)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

/// The in/out variants exist only for directed graphs.
constexpr bool requires_directed(Measure m) noexcept {
  return m == Measure::cc_in || m == Measure::cc_out || m == Measure::dc_in ||
         m == Measure::dc_out;
}

enum class Direction { in, out, total };

struct PowerIterationParams {
  double damping = 0.85;
  double tol = 1e-9;
  std::size_t max_iter = 200;
};

/// Default solver settings for eigenvector centrality, whose convergence on
/// near-regular graphs is far slower than PageRank's.
inline constexpr PowerIterationParams kEigenvectorDefaults{0.0, 1e-9, 10000};

struct CentralityVector {
  Measure measure = Measure::dc;
  std::vector<double> scores;
  PowerIterationParams params{};
  bool converged = true;
  std::size_t iterations = 0;
};

namespace detail {

inline void check_direction(const Graph& g, Direction dir) {
  if (dir != Direction::total && !g.directed())
    throw invalid_argument("in/out variants require a directed graph");
}

template <typename Fn>
void for_each_neighbor(const Graph& g, vertex_id u, Direction dir, Fn&& fn) {
  if (dir == Direction::in) {
    for (vertex_id w : g.in_neighbors(u)) fn(w);
  } else if (dir == Direction::out || !g.directed()) {
    for (vertex_id w : g.out_neighbors(u)) fn(w);
  } else {
    for (vertex_id w : g.out_neighbors(u)) fn(w);
    for (vertex_id w : g.in_neighbors(u)) fn(w);
  }
}

}  // namespace detail

inline CentralityVector degree_centrality(const Graph& g, Direction dir = Direction::total) {
  detail::check_direction(g, dir);
  CentralityVector cv;
  cv.measure = dir == Direction::in ? Measure::dc_in : dir == Direction::out ? Measure::dc_out : Measure::dc;
  cv.scores.resize(g.n());
  for (vertex_id v = 0; v < g.n(); ++v) {
    std::size_t d = dir == Direction::in    ? g.in_degree(v)
                    : dir == Direction::out ? g.out_degree(v)
                    : g.directed()          ? g.in_degree(v) + g.out_degree(v)
                                            : g.out_degree(v);
    cv.scores[v] = static_cast<double>(d);
  }
  return cv;
}

/// (r_v - 1) / sum of distances to the r_v - 1 other vertices reachable from v;
/// 0 when v reaches nothing. `in` follows arcs backwards, `total` ignores
/// direction.
inline CentralityVector closeness_centrality(const Graph& g, Direction dir = Direction::total) {
  detail::check_direction(g, dir);
  CentralityVector cv;
  cv.measure = dir == Direction::in ? Measure::cc_in : dir == Direction::out ? Measure::cc_out : Measure::cc;
  cv.scores.assign(g.n(), 0.0);
  auto blocks = detail::fixed_blocks(g.n());
  parallel_for(blocks.count, [&](std::size_t b) {
    detail::Bfs bfs(g.n());
    auto neighbors = [&](vertex_id u, auto&& f) { detail::for_each_neighbor(g, u, dir, f); };
    for (std::size_t s = blocks.begin(b); s < blocks.end(b); ++s) {
      std::uint64_t total = 0;
      std::size_t reached = bfs.run(static_cast<vertex_id>(s), neighbors,
                                    [&](vertex_id, std::uint32_t d) { total += d; });
      cv.scores[s] = total ? static_cast<double>(reached - 1) / static_cast<double>(total) : 0.0;
    }
  });
  return cv;
}

/// Brandes accumulation; unnormalized. Directed graphs sum over ordered
/// (s, t) pairs, undirected graphs over unordered pairs.
inline CentralityVector betweenness_centrality(const Graph& g) {
  const std::size_t n = g.n();
  CentralityVector cv;
  cv.measure = Measure::bc;
  cv.scores.assign(n, 0.0);
  if (n == 0) return cv;
  // Partial sums per fixed block, merged in block order, keep the result
  // bit-identical for any worker count.
  auto blocks = detail::fixed_blocks(n, 32);
  std::vector<std::vector<double>> partial(blocks.count);
  parallel_for(blocks.count, [&](std::size_t b) {
    std::vector<double> acc(n, 0.0), sigma(n, 0.0), delta(n, 0.0);
    std::vector<std::int64_t> dist(n, -1);
    std::vector<vertex_id> order;
    order.reserve(n);
    for (std::size_t src = blocks.begin(b); src < blocks.end(b); ++src) {
      auto s = static_cast<vertex_id>(src);
      order.clear();
      sigma[s] = 1.0;
      dist[s] = 0;
      order.push_back(s);
      for (std::size_t head = 0; head < order.size(); ++head) {
        vertex_id u = order[head];
        for (vertex_id w : g.out_neighbors(u)) {
          if (dist[w] < 0) {
            dist[w] = dist[u] + 1;
            order.push_back(w);
          }
          if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        vertex_id w = *it;
        for (vertex_id u : g.in_neighbors(w))
          if (dist[u] >= 0 && dist[u] == dist[w] - 1)
            delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
        if (w != s) acc[w] += delta[w];
      }
      for (vertex_id v : order) {
        sigma[v] = 0.0;
        delta[v] = 0.0;
        dist[v] = -1;
      }
    }
    partial[b] = std::move(acc);
  });
  for (const auto& p : partial)
    for (std::size_t v = 0; v < n; ++v) cv.scores[v] += p[v];
  if (!g.directed())
    for (double& s : cv.scores) s /= 2.0;
  return cv;
}

/// Dominant eigenvector of the in-flow operator x <- A^T x (symmetric for
/// undirected graphs), max-normalized. The iteration runs on A^T + I, which
/// has the same eigenvectors and avoids the oscillation of bipartite graphs.
inline CentralityVector eigenvector_centrality(const Graph& g,
                                               PowerIterationParams params = kEigenvectorDefaults) {
  const std::size_t n = g.n();
  if (n == 0 || g.m() == 0) throw invalid_argument("eigenvector centrality needs at least one edge");
  CentralityVector cv;
  cv.measure = Measure::ec;
  cv.params = params;
  cv.converged = false;
  std::vector<double> x(n, 1.0), y(n);
  for (std::size_t it = 1; it <= params.max_iter; ++it) {
    double top = 0.0;
    for (vertex_id v = 0; v < n; ++v) {
      double s = x[v];
      for (vertex_id u : g.in_neighbors(v)) s += x[u];
      y[v] = s;
      top = std::max(top, s);
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] /= top;
      change = std::max(change, std::abs(y[v] - x[v]));
    }
    std::swap(x, y);
    cv.iterations = it;
    if (change < params.tol) {
      cv.converged = true;
      break;
    }
  }
  cv.scores = std::move(x);
  return cv;
}

/// PageRank by power iteration; dangling mass is spread uniformly. Stops
/// when the L1 change drops below tol; `converged` is false otherwise.
inline CentralityVector pagerank(const Graph& g, PowerIterationParams params = {}) {
  if (!(params.damping > 0.0 && params.damping < 1.0))
    throw invalid_argument("pagerank damping must lie in (0, 1)");
  const std::size_t n = g.n();
  CentralityVector cv;
  cv.measure = Measure::pr;
  cv.params = params;
  if (n == 0) return cv;
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, inv_n), y(n), share(n);
  cv.converged = false;
  for (std::size_t it = 1; it <= params.max_iter; ++it) {
    double dangling = 0.0;
    for (vertex_id v = 0; v < n; ++v) {
      std::size_t d = g.out_degree(v);
      if (d == 0) {
        dangling += x[v];
        share[v] = 0.0;
      } else {
        share[v] = x[v] / static_cast<double>(d);
      }
    }
    const double base = (1.0 - params.damping) * inv_n + params.damping * dangling * inv_n;
    double total = 0.0;
    for (vertex_id v = 0; v < n; ++v) {
      double s = 0.0;
      for (vertex_id u : g.in_neighbors(v)) s += share[u];
      y[v] = base + params.damping * s;
      total += y[v];
    }
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] /= total;
      change += std::abs(y[v] - x[v]);
    }
    std::swap(x, y);
    cv.iterations = it;
    if (change < params.tol) {
      cv.converged = true;
      break;
    }
  }
  cv.scores = std::move(x);
  return cv;
}

/// Dispatches on the measure tag. `pr_params` applies to PageRank,
/// `ec_params` to eigenvector centrality.
inline CentralityVector compute_centrality(const Graph& g, Measure m,
                                           PowerIterationParams pr_params = {},
                                           PowerIterationParams ec_params = kEigenvectorDefaults) {
  if (requires_directed(m) && !g.directed())
    throw invalid_argument(std::string(to_string(m)) + " requires a directed graph");
  switch (m) {
    case Measure::bc: return betweenness_centrality(g);
    case Measure::cc: return closeness_centrality(g, Direction::total);
    case Measure::cc_in: return closeness_centrality(g, Direction::in);
    case Measure::cc_out: return closeness_centrality(g, Direction::out);
    case Measure::dc: return degree_centrality(g, Direction::total);
    case Measure::dc_in: return degree_centrality(g, Direction::in);
    case Measure::dc_out: return degree_centrality(g, Direction::out);
    case Measure::ec: return eigenvector_centrality(g, ec_params);
    case Measure::pr: return pagerank(g, pr_params);
  }
  throw invalid_argument("unknown measure");
}

/// CSV with columns vertex_label,score.
inline void write_centrality_csv(std::ostream& out, const Graph& g, const CentralityVector& cv) {
  out << "vertex_label,score\n";
  auto old = out.precision(17);
  for (vertex_id v = 0; v < cv.scores.size(); ++v) out << g.label(v) << ',' << cv.scores[v] << '\n';
  out.precision(old);
}

}  // namespace netsens
