#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "netsens/error.hpp"
#include "netsens/graph.hpp"
#include "netsens/rng.hpp"

namespace netsens {

/// G(n, p): every unordered pair independently with probability p. Pairs are
/// visited by geometric skipping, so the cost is O(n + m).
inline Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw invalid_argument("erdos_renyi: p must lie in [0, 1]");
  std::vector<Edge> edges;
  if (p >= 1.0) {
    for (vertex_id v = 1; v < n; ++v)
      for (vertex_id w = 0; w < v; ++w) edges.push_back({w, v});
  } else if (p > 0.0 && n > 1) {
    auto rng = make_rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_q = std::log1p(-p);
    std::int64_t v = 1, w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      double r = unit(rng);
      double skip = std::floor(std::log1p(-r) / log_q);
      if (skip > static_cast<double>(nn) * static_cast<double>(nn)) break;
      w += 1 + static_cast<std::int64_t>(skip);
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.push_back({static_cast<vertex_id>(w), static_cast<vertex_id>(v)});
    }
  }
  return simplify(n, std::move(edges), false);
}

/// Preferential attachment grown from a single vertex. Each arrival links to
/// l distinct existing vertices drawn with probability proportional to
/// degree (without replacement); with at most l existing vertices it links to
/// all of them, and when every existing degree is zero it draws uniformly.
inline Graph barabasi_albert(std::size_t n, std::size_t l, std::uint64_t seed) {
  if (l < 1) throw invalid_argument("barabasi_albert: l must be at least 1");
  if (n == 0) throw invalid_argument("barabasi_albert: n must be positive");
  auto rng = make_rng(seed);
  std::vector<Edge> edges;
  std::vector<vertex_id> ends;  // each edge contributes both endpoints
  std::vector<char> chosen(n, 0);
  std::vector<vertex_id> targets;
  for (std::size_t i = 1; i < n; ++i) {
    auto v = static_cast<vertex_id>(i);
    targets.clear();
    if (i <= l) {
      for (vertex_id u = 0; u < v; ++u) targets.push_back(u);
    } else {
      std::uniform_int_distribution<std::size_t> pick_end(0, ends.empty() ? 0 : ends.size() - 1);
      std::uniform_int_distribution<vertex_id> pick_vertex(0, v - 1);
      while (targets.size() < l) {
        vertex_id u = ends.empty() ? pick_vertex(rng) : ends[pick_end(rng)];
        if (chosen[u]) continue;
        chosen[u] = 1;
        targets.push_back(u);
      }
      for (vertex_id u : targets) chosen[u] = 0;
    }
    for (vertex_id u : targets) {
      edges.push_back({u, v});
      ends.push_back(u);
      ends.push_back(v);
    }
  }
  return simplify(n, std::move(edges), false);
}

/// Ring where each vertex links to its k successors (and so k predecessors).
/// Every endpoint of every lattice edge is then independently rewired with
/// probability p_rew to a uniform random vertex other than the edge's
/// opposite endpoint (the igraph rewiring rule). Parallel edges that arise
/// are dropped.
inline Graph watts_strogatz(std::size_t n, std::size_t k, double p_rew, std::uint64_t seed) {
  if (k < 1 || 2 * k >= n) throw invalid_argument("watts_strogatz: need 1 <= k < n/2");
  if (!(p_rew >= 0.0 && p_rew <= 1.0)) throw invalid_argument("watts_strogatz: p_rew must lie in [0, 1]");
  auto rng = make_rng(seed);
  std::bernoulli_distribution rewire(p_rew);
  std::uniform_int_distribution<vertex_id> other(0, static_cast<vertex_id>(n - 2));
  auto redraw = [&](vertex_id opposite) {
    vertex_id r = other(rng);
    return r != opposite ? r : static_cast<vertex_id>(n - 1);
  };
  std::vector<Edge> edges;
  edges.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      Edge e{static_cast<vertex_id>(i), static_cast<vertex_id>((i + j) % n)};
      if (p_rew > 0.0) {
        if (rewire(rng)) e.source = redraw(e.target);
        if (rewire(rng)) e.target = redraw(e.source);
      }
      edges.push_back(e);
    }
  return simplify(n, std::move(edges), false);
}

/// Uniform random stub matching on the given degree sequence, then
/// simplification. The result's degrees are pointwise at most the input's.
inline Graph configuration_model(const std::vector<std::size_t>& degrees, std::uint64_t seed) {
  std::size_t total = std::accumulate(degrees.begin(), degrees.end(), std::size_t{0});
  if (total % 2 != 0) throw invalid_argument("configuration_model: degree sum is odd");
  std::vector<vertex_id> stubs;
  stubs.reserve(total);
  for (vertex_id v = 0; v < degrees.size(); ++v) stubs.insert(stubs.end(), degrees[v], v);
  auto rng = make_rng(seed);
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<Edge> edges;
  edges.reserve(total / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) edges.push_back({stubs[i], stubs[i + 1]});
  return simplify(degrees.size(), std::move(edges), false);
}

/// Degree sequence in id order (total degree for directed graphs).
inline std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> d(g.n());
  for (vertex_id v = 0; v < g.n(); ++v)
    d[v] = g.directed() ? g.in_degree(v) + g.out_degree(v) : g.out_degree(v);
  return d;
}

enum class Model { er, ba, ws, cf };

constexpr std::string_view to_string(Model m) noexcept {
  switch (m) {
    case Model::er: return "er";
    case Model::ba: return "ba";
    case Model::ws: return "ws";
    case Model::cf: return "cf";
  }
  return "?";
}

inline std::optional<Model> parse_model(std::string_view s) {
  for (Model m : {Model::er, Model::ba, Model::ws, Model::cf})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct ModelSpec {
  Model model = Model::er;
  std::size_t n = 0;
  double p = 0.0;           // er
  std::size_t l = 0;        // ba
  std::size_t k = 0;        // ws
  double p_rew = 0.0;       // ws
  std::vector<std::size_t> degrees;  // cf
  std::string degree_source;         // cf: where the sequence came from

  void validate() const {
    switch (model) {
      case Model::er:
        if (!(p >= 0.0 && p <= 1.0)) throw invalid_argument("er: p must lie in [0, 1]");
        break;
      case Model::ba:
        if (l < 1 || l >= n) throw invalid_argument("ba: need 1 <= l < n");
        break;
      case Model::ws:
        if (k < 1 || 2 * k >= n) throw invalid_argument("ws: need 1 <= k < n/2");
        if (!(p_rew >= 0.0 && p_rew <= 1.0)) throw invalid_argument("ws: p_rew must lie in [0, 1]");
        break;
      case Model::cf:
        if (std::accumulate(degrees.begin(), degrees.end(), std::size_t{0}) % 2 != 0)
          throw invalid_argument("cf: degree sum is odd");
        break;
    }
  }

  /// Compact "key=value;..." description used in result tables.
  std::string params() const {
    std::ostringstream s;
    s.precision(10);
    switch (model) {
      case Model::er: s << "n=" << n << ";p=" << p; break;
      case Model::ba: s << "n=" << n << ";l=" << l; break;
      case Model::ws: s << "n=" << n << ";k=" << k << ";p_rew=" << p_rew; break;
      case Model::cf: s << "n=" << degrees.size() << ";degrees=" << degree_source; break;
    }
    return s.str();
  }
};

inline Graph generate(const ModelSpec& spec, std::uint64_t seed) {
  spec.validate();
  switch (spec.model) {
    case Model::er: return erdos_renyi(spec.n, spec.p, seed);
    case Model::ba: return barabasi_albert(spec.n, spec.l, seed);
    case Model::ws: return watts_strogatz(spec.n, spec.k, spec.p_rew, seed);
    case Model::cf: return configuration_model(spec.degrees, seed);
  }
  throw invalid_argument("unknown model");
}

}  // namespace netsens
