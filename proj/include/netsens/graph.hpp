#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netsens/error.hpp"
#include "netsens/rng.hpp"

namespace netsens {

using vertex_id = std::uint32_t;

struct Edge {
  vertex_id source;
  vertex_id target;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Counts of what simplification dropped.
struct SimplifyStats {
  std::size_t loops = 0;
  std::size_t duplicates = 0;
};

/// Immutable, simple, unweighted graph in CSR form.
///
/// Undirected edges are stored once logically (m counts each once) and
/// mirrored in the adjacency so that neighbor iteration is O(deg). For
/// undirected graphs in_neighbors() and out_neighbors() coincide. Neighbor
/// lists are sorted ascending.
class Graph {
 public:
  Graph() = default;

  std::size_t n() const noexcept { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
  std::size_t m() const noexcept { return m_; }
  bool directed() const noexcept { return directed_; }

  std::span<const vertex_id> out_neighbors(vertex_id v) const {
    return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const vertex_id> in_neighbors(vertex_id v) const {
    if (!directed_) return out_neighbors(v);
    return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(vertex_id v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  std::size_t in_degree(vertex_id v) const {
    return directed_ ? in_offsets_[v + 1] - in_offsets_[v] : out_degree(v);
  }

  bool has_edge(vertex_id u, vertex_id v) const {
    auto nb = out_neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Original label of v, or its decimal id when the graph carries none.
  std::string label(vertex_id v) const {
    return labels_.empty() ? std::to_string(v) : labels_[v];
  }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Every edge once; undirected edges as (min, max). Sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (vertex_id u = 0; u < n(); ++u)
      for (vertex_id v : out_neighbors(u))
        if (directed_ || u < v) out.push_back({u, v});
    return out;
  }

  /// Structural hash over directedness, n and the edge set.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.directed_ == b.directed_ && a.out_offsets_ == b.out_offsets_ &&
           a.out_targets_ == b.out_targets_;
  }

  friend Graph simplify(std::size_t n, std::vector<Edge> edges, bool directed,
                        SimplifyStats* stats, std::vector<std::string> labels);

 private:
  static void build_csr(std::size_t n, std::span<const Edge> arcs, bool flip,
                        std::vector<std::size_t>& offsets,
                        std::vector<vertex_id>& targets) {
    offsets.assign(n + 1, 0);
    for (const Edge& e : arcs) ++offsets[(flip ? e.target : e.source) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    targets.resize(arcs.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const Edge& e : arcs) {
      vertex_id from = flip ? e.target : e.source;
      targets[cursor[from]++] = flip ? e.source : e.target;
    }
    for (std::size_t i = 0; i < n; ++i)
      std::sort(targets.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                targets.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }

  bool directed_ = false;
  std::size_t m_ = 0;
  std::vector<std::size_t> out_offsets_;
  std::vector<vertex_id> out_targets_;
  std::vector<std::size_t> in_offsets_;
  std::vector<vertex_id> in_targets_;
  std::vector<std::string> labels_;
  std::uint64_t fingerprint_ = 0;
};

/// Builds a simple graph from an edge multiset over dense ids 0..n-1.
/// Self-loops and parallel edges are dropped; for undirected graphs (u,v)
/// and (v,u) collapse to one edge. `labels` is either empty or has size n.
inline Graph simplify(std::size_t n, std::vector<Edge> edges, bool directed,
                      SimplifyStats* stats = nullptr,
                      std::vector<std::string> labels = {}) {
  if (!labels.empty() && labels.size() != n)
    throw invalid_argument("label table size does not match vertex count");
  SimplifyStats local;
  std::size_t kept = 0;
  for (Edge e : edges) {
    if (e.source >= n || e.target >= n)
      throw invalid_argument("edge endpoint out of range");
    if (e.source == e.target) {
      ++local.loops;
      continue;
    }
    if (!directed && e.source > e.target) std::swap(e.source, e.target);
    edges[kept++] = e;
  }
  edges.resize(kept);
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  local.duplicates = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  if (stats) *stats = local;

  Graph g;
  g.directed_ = directed;
  g.m_ = edges.size();
  g.labels_ = std::move(labels);
  if (directed) {
    Graph::build_csr(n, edges, false, g.out_offsets_, g.out_targets_);
    Graph::build_csr(n, edges, true, g.in_offsets_, g.in_targets_);
  } else {
    std::vector<Edge> arcs;
    arcs.reserve(2 * edges.size());
    for (const Edge& e : edges) {
      arcs.push_back(e);
      arcs.push_back({e.target, e.source});
    }
    Graph::build_csr(n, arcs, false, g.out_offsets_, g.out_targets_);
  }

  std::uint64_t h = mix64(directed ? 0x5a5a : 0xa5a5) ^ mix64(n);
  for (const Edge& e : edges)
    h = mix64(h ^ ((static_cast<std::uint64_t>(e.source) << 32) | e.target));
  g.fingerprint_ = h;
  return g;
}

/// Undirected version of a directed graph: {u,v} exists iff (u,v) or (v,u)
/// did. Labels carry over.
inline Graph symmetrize(const Graph& g) {
  if (!g.directed()) throw invalid_argument("symmetrize: graph is already undirected");
  return simplify(g.n(), g.edges(), false, nullptr, g.labels());
}

/// A set of vertex ids of one graph, kept sorted and unique.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::vector<vertex_id> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  VertexSet(std::initializer_list<vertex_id> ids) : VertexSet(std::vector<vertex_id>(ids)) {}

  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(vertex_id v) const {
    return std::binary_search(ids_.begin(), ids_.end(), v);
  }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  /// Throws unless every member is < n.
  void validate(std::size_t n) const {
    if (!ids_.empty() && ids_.back() >= n)
      throw invalid_argument("vertex id " + std::to_string(ids_.back()) +
                             " out of range for graph with " + std::to_string(n) +
                             " vertices");
  }

 private:
  std::vector<vertex_id> ids_;
};

/// An induced subgraph together with the map from its dense ids back to the
/// ids of the graph it was taken from.
struct Subgraph {
  Graph graph;
  std::vector<vertex_id> original_id;
};

/// Induced subgraph on the vertices selected by `keep` (size n). Survivors
/// are re-indexed densely in ascending original order and keep their labels.
inline Subgraph induced_subgraph(const Graph& g, const std::vector<char>& keep) {
  const std::size_t n = g.n();
  std::vector<vertex_id> new_id(n, static_cast<vertex_id>(-1));
  Subgraph out;
  for (vertex_id v = 0; v < n; ++v) {
    if (keep[v]) {
      new_id[v] = static_cast<vertex_id>(out.original_id.size());
      out.original_id.push_back(v);
    }
  }
  if (out.original_id.empty()) throw invalid_argument("vertex removal leaves an empty graph");

  std::vector<Edge> edges;
  for (vertex_id u = 0; u < n; ++u) {
    if (!keep[u]) continue;
    for (vertex_id v : g.out_neighbors(u))
      if (keep[v] && (g.directed() || u < v)) edges.push_back({new_id[u], new_id[v]});
  }
  std::vector<std::string> labels;
  labels.reserve(out.original_id.size());
  for (vertex_id v : out.original_id) labels.push_back(g.label(v));
  out.graph = simplify(out.original_id.size(), std::move(edges), g.directed(), nullptr,
                       std::move(labels));
  return out;
}

/// Induced subgraph on V minus `victims`.
inline Subgraph remove_vertices(const Graph& g, const VertexSet& victims) {
  victims.validate(g.n());
  std::vector<char> keep(g.n(), 1);
  for (vertex_id v : victims) keep[v] = 0;
  return induced_subgraph(g, keep);
}

}  // namespace netsens
