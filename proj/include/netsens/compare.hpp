#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "netsens/centrality.hpp"
#include "netsens/error.hpp"
#include "netsens/graph.hpp"
#include "netsens/neighborhood.hpp"

namespace netsens {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative harmonic diameter change D(mod) / D(G) - 1. Infinite when the
/// modified graph has no pair at finite positive distance.
inline double delta_harmonic(const NeighborhoodFunction& original, const NeighborhoodFunction& modified) {
  double d_g = harmonic_diameter(original);
  if (std::isinf(d_g)) throw invalid_argument("source graph has infinite harmonic diameter");
  double d_mod = harmonic_diameter(modified);
  if (std::isinf(d_mod)) return kInfinity;
  return d_mod / d_g - 1.0;
}

/// Relative average distance change; nullopt when either graph has no
/// reachable pair.
inline std::optional<double> delta_avg_distance(const NeighborhoodFunction& original,
                                                const NeighborhoodFunction& modified) {
  try {
    return average_distance(modified) / average_distance(original) - 1.0;
  } catch (const invalid_argument&) {
    return std::nullopt;
  }
}

/// Relative change of the fraction of reachable ordered pairs.
inline double delta_reachable(const NeighborhoodFunction& original, const NeighborhoodFunction& modified) {
  return reachable_pairs(modified) / reachable_pairs(original) - 1.0;
}

namespace detail {

/// Both distributions on their union support.
inline std::pair<std::vector<double>, std::vector<double>> align(const SpDistribution& p,
                                                                 const SpDistribution& q) {
  std::size_t lo = std::min(p.t_min, q.t_min);
  std::size_t hi = std::max(p.t_max(), q.t_max());
  std::vector<double> a, b;
  a.reserve(hi - lo + 1);
  b.reserve(hi - lo + 1);
  for (std::size_t t = lo; t <= hi; ++t) {
    a.push_back(p.at(t));
    b.push_back(q.at(t));
  }
  return {std::move(a), std::move(b)};
}

inline double kl_bits(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return kInfinity;
    sum += p[i] * std::log2(p[i] / q[i]);
  }
  return std::max(0.0, sum);
}

}  // namespace detail

/// Kullback-Leibler divergence in bits; infinite when P puts mass where Q has none.
inline double kl_divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw invalid_argument("distributions are not aligned");
  return detail::kl_bits(p, q);
}

inline double kl_divergence(const SpDistribution& p, const SpDistribution& q) {
  auto [a, b] = detail::align(p, q);
  return kl_divergence(a, b);
}

/// Square root of the base-2 Jensen-Shannon divergence; lies in [0, 1].
inline double jensen_shannon_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw invalid_argument("distributions are not aligned");
  std::vector<double> mid(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mid[i] = 0.5 * (p[i] + q[i]);
  double js = 0.5 * detail::kl_bits(p, mid) + 0.5 * detail::kl_bits(q, mid);
  return std::sqrt(std::clamp(js, 0.0, 1.0));
}

inline double jensen_shannon_distance(const SpDistribution& p, const SpDistribution& q) {
  auto [a, b] = detail::align(p, q);
  return jensen_shannon_distance(a, b);
}

/// sqrt(1 - sum sqrt(P Q)), evaluated as sqrt(sum (sqrt P - sqrt Q)^2 / 2)
/// so that equal inputs give exactly 0; lies in [0, 1].
inline double hellinger_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw invalid_argument("distributions are not aligned");
  double ss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double d = std::sqrt(p[i]) - std::sqrt(q[i]);
    ss += d * d;
  }
  return std::sqrt(std::clamp(0.5 * ss, 0.0, 1.0));
}

inline double hellinger_distance(const SpDistribution& p, const SpDistribution& q) {
  auto [a, b] = detail::align(p, q);
  return hellinger_distance(a, b);
}

/// 1-based ranks; tied values share the mean of their positions.
inline std::vector<double> fractional_ranks(std::span<const double> x) {
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> rank(x.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) ++j;
    double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

/// Spearman's rank correlation (Pearson correlation of fractional ranks).
/// nullopt when either input is constant.
inline std::optional<double> spearman_rho(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw invalid_argument("spearman_rho: vectors differ in length");
  if (a.size() < 2) throw invalid_argument("spearman_rho: need at least two values");
  auto ra = fractional_ranks(a);
  auto rb = fractional_ranks(b);
  const double mean = 0.5 * static_cast<double>(a.size() + 1);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double da = ra[i] - mean, db = rb[i] - mean;
    cov += da * db;
    va += da * da;
    vb += db * db;
  }
  if (va == 0.0 || vb == 0.0) return std::nullopt;
  return std::clamp(cov / std::sqrt(va * vb), -1.0, 1.0);
}

/// Scores of the original graph restricted to the survivors of a removal, in
/// survivor id order.
inline std::vector<double> restrict_to_survivors(const CentralityVector& original,
                                                 const std::vector<vertex_id>& original_id) {
  std::vector<double> out;
  out.reserve(original_id.size());
  for (vertex_id v : original_id) out.push_back(original.scores.at(v));
  return out;
}

inline std::optional<double> spearman_rho(const CentralityVector& original, const CentralityVector& modified,
                                          const std::vector<vertex_id>& original_id) {
  auto restricted = restrict_to_survivors(original, original_id);
  return spearman_rho(restricted, modified.scores);
}

}  // namespace netsens
