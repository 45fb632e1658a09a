#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <type_traits>
#include <vector>

namespace qtw {

using Vertex = int;

inline constexpr int kMaxVertices = 63;

/// Subset of the vertices {0..62} packed into one machine word.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr VertexSet single(Vertex v) { return VertexSet(std::uint64_t{1} << v); }
  /// {0, ..., n-1}
  static constexpr VertexSet range(int n) {
    return VertexSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Vertex v) const { return (bits_ >> v) & 1U; }
  constexpr bool subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool intersects(VertexSet o) const { return (bits_ & o.bits_) != 0; }

  /// Smallest member; undefined on the empty set.
  constexpr Vertex first() const { return std::countr_zero(bits_); }
  /// Largest member; undefined on the empty set.
  constexpr Vertex last() const { return 63 - std::countl_zero(bits_); }

  constexpr VertexSet& insert(Vertex v) {
    bits_ |= std::uint64_t{1} << v;
    return *this;
  }
  constexpr VertexSet& erase(Vertex v) {
    bits_ &= ~(std::uint64_t{1} << v);
    return *this;
  }
  constexpr VertexSet with(Vertex v) const { return VertexSet(bits_ | (std::uint64_t{1} << v)); }
  constexpr VertexSet without(Vertex v) const { return VertexSet(bits_ & ~(std::uint64_t{1} << v)); }

  constexpr VertexSet operator|(VertexSet o) const { return VertexSet(bits_ | o.bits_); }
  constexpr VertexSet operator&(VertexSet o) const { return VertexSet(bits_ & o.bits_); }
  constexpr VertexSet operator-(VertexSet o) const { return VertexSet(bits_ & ~o.bits_); }
  constexpr VertexSet& operator|=(VertexSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr VertexSet& operator&=(VertexSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  constexpr VertexSet& operator-=(VertexSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }

  constexpr bool operator==(const VertexSet&) const = default;
  constexpr auto operator<=>(const VertexSet&) const = default;

  class Iterator {
   public:
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    constexpr Iterator() = default;
    constexpr explicit Iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr Vertex operator*() const { return std::countr_zero(rest_); }
    constexpr Iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr Iterator operator++(int) {
      Iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const Iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr Iterator begin() const { return Iterator(bits_); }
  constexpr Iterator end() const { return Iterator(0); }

  std::vector<Vertex> to_vector() const { return {begin(), end()}; }

  /// Human-readable "{0,3,5}" (0-based).
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

/// Gathers the bits of `set` selected by `scope` into the low bits (software pext).
inline std::uint64_t compress(VertexSet set, VertexSet scope) {
  std::uint64_t out = 0;
  int i = 0;
  for (Vertex v : scope) {
    if (set.contains(v)) out |= std::uint64_t{1} << i;
    ++i;
  }
  return out;
}

/// Inverse of compress: scatters the low bits of `index` onto the members of `scope`.
inline VertexSet expand(std::uint64_t index, VertexSet scope) {
  std::uint64_t out = 0;
  for (Vertex v : scope) {
    if (index & 1U) out |= std::uint64_t{1} << v;
    index >>= 1;
    if (index == 0) break;
  }
  return VertexSet(out);
}

/// Next larger word with the same popcount (Gosper's hack). Requires x != 0.
constexpr std::uint64_t next_same_popcount(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

/// Calls `fn(VertexSet)` for every k-subset of `ground`, in increasing numeric order of the
/// compressed pattern. Stops early if `fn` returns false (when it returns bool).
template <typename Fn>
void for_each_subset_of_size(VertexSet ground, int k, Fn&& fn) {
  const int m = ground.size();
  if (k < 0 || k > m) return;
  if (k == 0) {
    fn(VertexSet{});
    return;
  }
  const std::uint64_t limit = m == 64 ? 0 : (std::uint64_t{1} << m);
  for (std::uint64_t x = (std::uint64_t{1} << k) - 1; x < limit; x = next_same_popcount(x)) {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn, VertexSet>, bool>) {
      if (!fn(expand(x, ground))) return;
    } else {
      fn(expand(x, ground));
    }
  }
}

}  // namespace qtw

template <>
struct std::hash<qtw::VertexSet> {
  std::size_t operator()(qtw::VertexSet s) const noexcept {
    std::uint64_t x = s.bits();
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};
