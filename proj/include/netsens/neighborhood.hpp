#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <vector>

#include "netsens/error.hpp"
#include "netsens/graph.hpp"
#include "netsens/hyperloglog.hpp"
#include "netsens/parallel.hpp"

namespace netsens {

/// Cumulative counts N(0..T) of ordered vertex pairs (u, v), u = v included,
/// with dist(u, v) <= t. Undirected graphs count both orientations of a pair.
struct NeighborhoodFunction {
  std::vector<double> values;
  /// Per-t sample standard deviation across runs; empty for exact results.
  std::vector<double> sd;
  std::size_t n = 0;
  bool exact = true;
  int register_exponent = 0;
  std::size_t runs = 0;

  std::size_t horizon() const noexcept { return values.empty() ? 0 : values.size() - 1; }
  double at(std::size_t t) const { return t < values.size() ? values[t] : values.back(); }
};

/// Probability mass over shortest-path lengths t_min..T.
struct SpDistribution {
  std::size_t t_min = 0;
  std::vector<double> mass;
  /// Raw counts SP(t) on the same support.
  std::vector<double> counts;

  std::size_t t_max() const noexcept { return t_min + mass.size() - 1; }
  double at(std::size_t t) const {
    return (t < t_min || t > t_max()) ? 0.0 : mass[t - t_min];
  }
};

namespace detail {

/// Single-source BFS with reusable buffers.
class Bfs {
 public:
  explicit Bfs(std::size_t n) : dist_(n, kUnseen), queue_(n) {}

  static constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

  /// Runs BFS from s along out-arcs; visit(v, d) is called for every reached
  /// vertex including s. Returns the number of reached vertices.
  template <typename Neighbors, typename Visit>
  std::size_t run(vertex_id s, Neighbors&& neighbors, Visit&& visit) {
    std::size_t head = 0, tail = 0;
    queue_[tail++] = s;
    dist_[s] = 0;
    while (head < tail) {
      vertex_id u = queue_[head++];
      std::uint32_t du = dist_[u];
      visit(u, du);
      neighbors(u, [&](vertex_id w) {
        if (dist_[w] == kUnseen) {
          dist_[w] = du + 1;
          queue_[tail++] = w;
        }
      });
    }
    for (std::size_t i = 0; i < tail; ++i) dist_[queue_[i]] = kUnseen;
    return tail;
  }

  template <typename Visit>
  std::size_t run_out(const Graph& g, vertex_id s, Visit&& visit) {
    return run(s, [&g](vertex_id u, auto&& f) { for (vertex_id w : g.out_neighbors(u)) f(w); },
               visit);
  }

 private:
  std::vector<std::uint32_t> dist_;
  std::vector<vertex_id> queue_;
};

/// Fixed partition of [0, n) into blocks whose boundaries do not depend on the
/// worker count.
struct Blocks {
  std::size_t n;
  std::size_t count;
  std::size_t begin(std::size_t b) const { return b * n / count; }
  std::size_t end(std::size_t b) const { return (b + 1) * n / count; }
};

inline Blocks fixed_blocks(std::size_t n, std::size_t max_blocks = 64) {
  return {n, std::max<std::size_t>(1, std::min(n, max_blocks))};
}

}  // namespace detail

/// Exact neighborhood function by BFS from every vertex.
inline NeighborhoodFunction exact_neighborhood_function(const Graph& g) {
  const std::size_t n = g.n();
  if (n == 0) throw invalid_argument("neighborhood function of an empty graph");
  auto blocks = detail::fixed_blocks(n);
  std::vector<std::vector<std::uint64_t>> hist(blocks.count);
  parallel_for(blocks.count, [&](std::size_t b) {
    detail::Bfs bfs(n);
    auto& h = hist[b];
    for (std::size_t s = blocks.begin(b); s < blocks.end(b); ++s)
      bfs.run_out(g, static_cast<vertex_id>(s), [&h](vertex_id, std::uint32_t d) {
        if (d >= h.size()) h.resize(d + 1, 0);
        ++h[d];
      });
  });
  std::vector<std::uint64_t> total;
  for (const auto& h : hist) {
    if (h.size() > total.size()) total.resize(h.size(), 0);
    for (std::size_t d = 0; d < h.size(); ++d) total[d] += h[d];
  }
  NeighborhoodFunction nf;
  nf.n = n;
  nf.exact = true;
  nf.values.resize(total.size());
  std::uint64_t acc = 0;
  for (std::size_t t = 0; t < total.size(); ++t) {
    acc += total[t];
    nf.values[t] = static_cast<double>(acc);
  }
  return nf;
}

/// HyperANF: approximate neighborhood function by iterating HyperLogLog
/// counters. Counter v starts as {v}; at each step it becomes the register-
/// wise max of itself and its out-neighbors' previous counters, so after t
/// steps it sketches the ball of radius t around v. Each run uses an
/// independent hash salt derived from (seed, run); the reported N(t) is the
/// mean over runs.
inline NeighborhoodFunction hyperanf(const Graph& g, int register_exponent, std::size_t runs,
                                     std::uint64_t seed) {
  hll::check_exponent(register_exponent);
  if (runs == 0) throw invalid_argument("hyperanf needs at least one run");
  const std::size_t n = g.n();
  if (n == 0) throw invalid_argument("neighborhood function of an empty graph");
  const std::size_t m = std::size_t{1} << register_exponent;
  auto blocks = detail::fixed_blocks(n, 256);

  std::vector<std::vector<double>> per_run(runs);
  std::vector<std::uint8_t> cur(n * m), next(n * m);
  std::vector<double> est(n);
  std::vector<char> changed(n), changed_next(n);

  for (std::size_t run = 0; run < runs; ++run) {
    const std::uint64_t salt = derive_seed(seed, {run});
    std::fill(cur.begin(), cur.end(), 0);
    for (std::size_t v = 0; v < n; ++v) {
      auto s = hll::slot_of(hll::hash_element(v, salt), register_exponent);
      cur[v * m + s.index] = s.rank;
      est[v] = hll::estimate({cur.data() + v * m, m});
    }
    auto& series = per_run[run];
    auto sum_estimates = [&] {
      double total = 0.0;
      for (double e : est) total += e;
      return total;
    };
    series.push_back(sum_estimates());
    std::fill(changed.begin(), changed.end(), 1);

    for (;;) {
      std::fill(changed_next.begin(), changed_next.end(), 0);
      parallel_for(blocks.count, [&](std::size_t b) {
        for (std::size_t v = blocks.begin(b); v < blocks.end(b); ++v) {
          std::span<std::uint8_t> dst(next.data() + v * m, m);
          std::copy_n(cur.data() + v * m, m, dst.data());
          bool any = false;
          for (vertex_id w : g.out_neighbors(static_cast<vertex_id>(v))) {
            if (!changed[w]) continue;  // an unchanged counter is already merged in
            any |= hll::merge_into(dst, {cur.data() + std::size_t{w} * m, m});
          }
          if (any) {
            changed_next[v] = 1;
            est[v] = hll::estimate(dst);
          }
        }
      });
      std::swap(cur, next);
      std::swap(changed, changed_next);
      bool any_changed = false;
      for (char c : changed) any_changed |= (c != 0);
      if (!any_changed) break;
      series.push_back(sum_estimates());
    }
  }

  std::size_t len = 0;
  for (const auto& s : per_run) len = std::max(len, s.size());
  NeighborhoodFunction nf;
  nf.n = n;
  nf.exact = false;
  nf.register_exponent = register_exponent;
  nf.runs = runs;
  nf.values.assign(len, 0.0);
  nf.sd.assign(len, 0.0);
  for (std::size_t t = 0; t < len; ++t) {
    double mean = 0.0;
    for (const auto& s : per_run) mean += t < s.size() ? s[t] : s.back();
    mean /= static_cast<double>(runs);
    double ss = 0.0;
    for (const auto& s : per_run) {
      double d = (t < s.size() ? s[t] : s.back()) - mean;
      ss += d * d;
    }
    nf.values[t] = mean;
    nf.sd[t] = runs > 1 ? std::sqrt(ss / static_cast<double>(runs - 1)) : 0.0;
  }
  return nf;
}

/// n(n-1) / sum_{t>0} (N(t) - N(t-1)) / t. Infinite when no ordered pair is
/// at finite positive distance.
inline double harmonic_diameter(const NeighborhoodFunction& nf) {
  if (nf.n < 2) throw invalid_argument("harmonic diameter needs at least two vertices");
  double inverse_sum = 0.0;
  for (std::size_t t = 1; t < nf.values.size(); ++t)
    inverse_sum += std::max(0.0, nf.values[t] - nf.values[t - 1]) / static_cast<double>(t);
  double pairs = static_cast<double>(nf.n) * static_cast<double>(nf.n - 1);
  if (inverse_sum <= 0.0) return std::numeric_limits<double>::infinity();
  return pairs / inverse_sum;
}

/// SP(0) = N(0), SP(t) = N(t) - N(t-1); masses normalized over the chosen
/// support. Without include_zero the support starts at t = 1. Negative
/// differences (possible only for estimates) are clamped to zero.
inline SpDistribution sp_distribution(const NeighborhoodFunction& nf, bool include_zero = false) {
  if (nf.values.empty()) throw invalid_argument("empty neighborhood function");
  SpDistribution d;
  d.t_min = include_zero ? 0 : 1;
  double total = 0.0;
  for (std::size_t t = d.t_min; t < nf.values.size(); ++t) {
    double sp = t == 0 ? nf.values[0] : std::max(0.0, nf.values[t] - nf.values[t - 1]);
    d.counts.push_back(sp);
    total += sp;
  }
  if (!(total > 0.0)) throw invalid_argument("degenerate shortest-path distribution");
  while (d.counts.size() > 1 && d.counts.back() == 0.0) d.counts.pop_back();
  d.mass.reserve(d.counts.size());
  for (double c : d.counts) d.mass.push_back(c / total);
  return d;
}

/// Mean distance over ordered pairs at finite positive distance.
inline double average_distance(const NeighborhoodFunction& nf) {
  double weighted = 0.0, pairs = 0.0;
  for (std::size_t t = 1; t < nf.values.size(); ++t) {
    double sp = std::max(0.0, nf.values[t] - nf.values[t - 1]);
    weighted += static_cast<double>(t) * sp;
    pairs += sp;
  }
  if (!(pairs > 0.0)) throw invalid_argument("average distance: no reachable pair");
  return weighted / pairs;
}

/// Fraction N(T) / n^2 of ordered pairs (self-pairs included) at finite distance.
inline double reachable_pairs(const NeighborhoodFunction& nf) {
  if (nf.n == 0 || nf.values.empty()) throw invalid_argument("empty neighborhood function");
  double n = static_cast<double>(nf.n);
  return nf.values.back() / (n * n);
}

/// CSV with columns t,N,sd (sd is 0 for exact results).
inline void write_neighborhood_csv(std::ostream& out, const NeighborhoodFunction& nf) {
  out << "t,N,sd\n";
  auto old = out.precision(17);
  for (std::size_t t = 0; t < nf.values.size(); ++t)
    out << t << ',' << nf.values[t] << ',' << (nf.sd.empty() ? 0.0 : nf.sd[t]) << '\n';
  out.precision(old);
}

}  // namespace netsens
