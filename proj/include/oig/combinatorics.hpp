#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "oig/bit_vector.hpp"
#include "oig/error.hpp"

namespace oig {

/// Exact counts for residue profiles. 256 bits covers C(m, m/2) for m up to 250;
/// arithmetic overflow throws instead of wrapping.
using BigCount = boost::multiprecision::checked_uint256_t;

inline BigCount binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

/// C(n, k) as a 64-bit value; throws CapacityError if it does not fit.
inline std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
  const BigCount b = binomial(n, k);
  if (b > BigCount(std::numeric_limits<std::uint64_t>::max())) {
    throw CapacityError("C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(b);
}

/// Calls fn(std::span<const std::size_t>) for every k-combination of 1..n in
/// lexicographic order of the position lists. Stops early if fn returns false.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> pos(k);
  std::iota(pos.begin(), pos.end(), std::size_t{1});
  while (true) {
    if constexpr (std::is_same_v<decltype(fn(std::span<const std::size_t>(pos))), bool>) {
      if (!fn(std::span<const std::size_t>(pos))) return;
    } else {
      fn(std::span<const std::size_t>(pos));
    }
    std::size_t i = k;
    while (i > 0 && pos[i - 1] == n - k + i) --i;
    if (i == 0) return;
    ++pos[i - 1];
    for (std::size_t j = i; j < k; ++j) pos[j] = pos[j - 1] + 1;
  }
}

/// Calls fn(const BitVector&) for every vector of length n with exactly k ones.
template <class Fn>
void for_each_weight_k(std::size_t n, std::size_t k, Fn&& fn) {
  for_each_combination(n, k, [&](std::span<const std::size_t> pos) {
    fn(BitVector::from_positions(n, pos));
  });
}

}  // namespace oig
