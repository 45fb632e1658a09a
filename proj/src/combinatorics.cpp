#include "qtw/combinatorics.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qtw {
namespace {

constexpr int kPascalRows = 257;

struct PascalTable {
  // Row-major lower triangle; built once.
  std::array<std::array<Count, kPascalRows>, kPascalRows> rows{};

  PascalTable() {
    for (int n = 0; n < kPascalRows; ++n) {
      rows[n][0] = {1, false};
      for (int k = 1; k <= n; ++k) {
        const Count a = rows[n - 1][k - 1];
        const Count b = k <= n - 1 ? rows[n - 1][k] : Count{};
        Count c;
        c.saturated = a.saturated || b.saturated || a.value > kCountMax - b.value;
        c.value = c.saturated ? kCountMax : a.value + b.value;
        rows[n][k] = c;
      }
    }
  }
};

const PascalTable& pascal() {
  static const PascalTable table;
  return table;
}

}  // namespace

Count binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return {};
  if (n >= kPascalRows) throw std::out_of_range("binomial: n too large");
  return pascal().rows[n][k];
}

std::uint64_t ceil_sqrt(std::uint64_t x) {
  if (x <= 1) return x;
  if (x > 0xFFFFFFFE00000001ULL) return std::uint64_t{1} << 32;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && (r > UINT32_MAX || r * r >= x)) --r;
  while (r * r < x) ++r;
  return r;
}

std::uint64_t unrank_colex(int k, std::uint64_t rank) {
  // Largest element first: pick the biggest c with C(c, k) <= rank.
  std::uint64_t out = 0;
  for (int i = k; i >= 1; --i) {
    int c = i - 1;
    while (c + 1 < 64 && choose(c + 1, i) <= rank) ++c;
    out |= std::uint64_t{1} << c;
    rank -= choose(c, i);
  }
  return out;
}

}  // namespace qtw
