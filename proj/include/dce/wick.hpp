#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace dce {

// Sum over all perfect matchings of the index set {0, .., count - 1} of the
// product of pair(a, b) over matched pairs (a < b). For count = 2k there are
// (2k - 1)!! matchings. This is both Wick's theorem for zero-mean Gaussian
// moments and the hafnian of a symmetric matrix.
template <class T, class Pair>
T sum_over_matchings(std::size_t count, Pair&& pair) {
  if (count % 2 != 0) return T{};
  if (count == 0) return T{1};
  // Bitmask of still-unmatched positions; 64 letters is far beyond any use here.
  auto rec = [&](auto&& self, std::uint64_t open) -> T {
    if (open == 0) return T{1};
    const int first = __builtin_ctzll(open);
    const std::uint64_t rest = open & (open - 1);
    T total{};
    for (std::uint64_t m = rest; m != 0; m &= m - 1) {
      const int second = __builtin_ctzll(m);
      total += pair(static_cast<std::size_t>(first), static_cast<std::size_t>(second)) *
               self(self, rest & ~(std::uint64_t{1} << second));
    }
    return total;
  };
  const std::uint64_t all =
      count >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
  return rec(rec, all);
}

// Number of perfect matchings (2k - 1)!! for a set of even size 2k.
inline std::uint64_t matching_count(std::size_t count) {
  if (count % 2 != 0) return 0;
  std::uint64_t r = 1;
  for (std::size_t k = count; k > 1; k -= 2) r *= (k - 1);
  return r;
}

}  // namespace dce
