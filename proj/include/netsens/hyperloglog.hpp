#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>

#include "netsens/error.hpp"
#include "netsens/rng.hpp"

namespace netsens::hll {

inline constexpr int kMinExponent = 4;
inline constexpr int kMaxExponent = 16;

inline void check_exponent(int b) {
  if (b < kMinExponent || b > kMaxExponent)
    throw invalid_argument("register exponent must be in [4, 16], got " + std::to_string(b));
}

/// Bias constant alpha_m of the HyperLogLog estimator.
constexpr double alpha(std::size_t m) noexcept {
  switch (m) {
    case 16: return 0.673;
    case 32: return 0.697;
    case 64: return 0.709;
    default: return 0.7213 / (1.0 + 1.079 / static_cast<double>(m));
  }
}

/// Register index and rank of a 64-bit hash for 2^b registers: the top b bits
/// select the register, the rank is one plus the number of leading zeros of
/// the remaining 64-b bits.
struct Slot {
  std::uint32_t index;
  std::uint8_t rank;
};

constexpr Slot slot_of(std::uint64_t hash, int b) noexcept {
  auto index = static_cast<std::uint32_t>(hash >> (64 - b));
  std::uint64_t rest = hash << b;
  int rank = rest == 0 ? 64 - b + 1 : std::countl_zero(rest) + 1;
  return {index, static_cast<std::uint8_t>(rank)};
}

constexpr std::uint64_t hash_element(std::uint64_t element, std::uint64_t salt) noexcept {
  return mix64(element ^ mix64(salt));
}

/// Table of 2^-r for every possible rank.
inline const std::array<double, 66>& inverse_powers() {
  static const std::array<double, 66> table = [] {
    std::array<double, 66> t{};
    for (std::size_t r = 0; r < t.size(); ++r) t[r] = std::ldexp(1.0, -static_cast<int>(r));
    return t;
  }();
  return table;
}

/// Cardinality estimate of one register array: alpha_m m^2 / sum 2^-R_j, with
/// linear counting below 5m/2 when empty registers remain. Hashes are 64-bit,
/// so no large-range correction is applied.
inline double estimate(std::span<const std::uint8_t> registers) {
  const auto& inv = inverse_powers();
  const double m = static_cast<double>(registers.size());
  double sum = 0.0;
  std::size_t zeros = 0;
  for (std::uint8_t r : registers) {
    sum += inv[r];
    zeros += (r == 0);
  }
  double raw = alpha(registers.size()) * m * m / sum;
  if (raw <= 2.5 * m && zeros != 0) return m * std::log(m / static_cast<double>(zeros));
  return raw;
}

/// Register-wise max of `from` into `into`; returns true when `into` changed.
inline bool merge_into(std::span<std::uint8_t> into, std::span<const std::uint8_t> from) {
  std::uint8_t changed = 0;
  for (std::size_t j = 0; j < into.size(); ++j) {
    std::uint8_t a = into[j];
    std::uint8_t b = from[j];
    std::uint8_t hi = a > b ? a : b;
    changed |= static_cast<std::uint8_t>(hi ^ a);
    into[j] = hi;
  }
  return changed != 0;
}

}  // namespace netsens::hll
