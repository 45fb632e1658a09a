#pragma once

#include <cstdint>
#include <limits>

#include "qtw/vertex_set.hpp"

namespace qtw {

/// A count that may have hit the 64-bit ceiling.
struct Count {
  std::uint64_t value = 0;
  bool saturated = false;

  bool operator==(const Count&) const = default;
};

inline constexpr std::uint64_t kCountMax = std::numeric_limits<std::uint64_t>::max();

/// C(n, k) by Pascal's rule, saturating at 2^64-1. Zero when k < 0 or k > n.
/// Supports n up to 256.
Count binomial(int n, int k);

/// Shorthand for binomial(n, k).value; callers that can overflow should use binomial().
inline std::uint64_t choose(int n, int k) { return binomial(n, k).value; }

inline std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > kCountMax - b ? kCountMax : a + b;
}

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kCountMax / b ? kCountMax : a * b;
}

/// ceil(sqrt(x)) computed exactly in integers.
std::uint64_t ceil_sqrt(std::uint64_t x);

/// The k-bit word of colex rank `rank` among words with popcount k (the Gosper order).
/// Requires rank < C(64, k) within range.
std::uint64_t unrank_colex(int k, std::uint64_t rank);

/// The k-subset of `ground` at colex position `rank`; rank < C(|ground|, k).
inline VertexSet unrank_subset(VertexSet ground, int k, std::uint64_t rank) {
  return expand(unrank_colex(k, rank), ground);
}

}  // namespace qtw
