#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "oig/bit_vector.hpp"
#include "oig/combinatorics.hpp"
#include "oig/error.hpp"

namespace oig {

/// Varshamov-Tenengolts code VT_a(m): vectors of length m whose weighted sum
/// sum_i i * v(i) is congruent to a modulo m + 1.
struct VtParams {
  std::size_t m;
  std::size_t a;

  VtParams(std::size_t length, std::size_t residue) : m(length), a(residue) {
    if (m == 0) throw InputError("VT code length must be positive");
    if (a > m) throw InputError("VT residue " + std::to_string(a) + " outside 0.." + std::to_string(m));
  }

  std::size_t modulus() const noexcept { return m + 1; }
};

/// sum_i i * v(i) mod (size + 1).
inline std::size_t residue(const BitVector& v) {
  const std::size_t mod = v.size() + 1;
  std::size_t r = 0;
  for (std::size_t p : v.ones()) r = (r + p) % mod;
  return r;
}

inline bool is_member(const BitVector& v, const VtParams& p) {
  if (v.size() != p.m) {
    throw InputError("vector length " + std::to_string(v.size()) + " does not match VT length " + std::to_string(p.m));
  }
  return residue(v) == p.a;
}

/// Sizes of VT_a(m) intersected with the weight-k layer, for every a.
struct ResidueProfile {
  std::size_t m = 0;
  std::size_t k = 0;
  std::vector<BigCount> counts;     ///< counts[a], a = 0..m
  std::vector<std::size_t> order;   ///< residues by descending count, ties by smaller residue

  BigCount total() const {
    BigCount s = 0;
    for (const auto& c : counts) s += c;
    return s;
  }
};

namespace detail {

inline void sort_residue_order(ResidueProfile& p) {
  p.order.resize(p.counts.size());
  std::iota(p.order.begin(), p.order.end(), std::size_t{0});
  std::stable_sort(p.order.begin(), p.order.end(),
                   [&](std::size_t a, std::size_t b) { return p.counts[a] > p.counts[b]; });
}

}  // namespace detail

/// Profiles for every weight 0..max_k of length-m vectors, from one dynamic
/// program over positions with state (ones used, residue). Cost O(m * max_k * (m+1)).
inline std::vector<ResidueProfile> residue_profiles(std::size_t m, std::size_t max_k) {
  if (m == 0) throw InputError("VT code length must be positive");
  if (max_k > m) throw InputError("weight " + std::to_string(max_k) + " exceeds length " + std::to_string(m));
  const std::size_t mod = m + 1;
  // dp[j * mod + r]: vectors over the positions seen so far with j ones and residue r.
  std::vector<BigCount> dp((max_k + 1) * mod, BigCount(0));
  dp[0] = 1;
  for (std::size_t pos = 1; pos <= m; ++pos) {
    const std::size_t top = std::min(pos, max_k);
    for (std::size_t j = top; j >= 1; --j) {
      for (std::size_t r = 0; r < mod; ++r) {
        const BigCount& from = dp[(j - 1) * mod + r];
        if (from != 0) dp[j * mod + (r + pos) % mod] += from;
      }
    }
  }
  std::vector<ResidueProfile> out(max_k + 1);
  for (std::size_t j = 0; j <= max_k; ++j) {
    ResidueProfile& p = out[j];
    p.m = m;
    p.k = j;
    p.counts.assign(dp.begin() + static_cast<std::ptrdiff_t>(j * mod),
                    dp.begin() + static_cast<std::ptrdiff_t>((j + 1) * mod));
    detail::sort_residue_order(p);
  }
  return out;
}

inline ResidueProfile count_by_residue(std::size_t m, std::size_t k) {
  return std::move(residue_profiles(m, k).back());
}

/// s_prime covers s when s_prime is s with exactly one 1 turned into 0.
inline bool covers(const BitVector& s_prime, const BitVector& s) {
  s.require_same_length(s_prime);
  return hamming_distance(s_prime, s) == 1 && s_prime.ones_count() + 1 == s.ones_count();
}

/// Codewords of VT_a(m) covering s. At most one exists; more is an invariant violation.
inline std::vector<BitVector> covered_codewords(const BitVector& s, const VtParams& p) {
  if (s.size() != p.m) throw InputError("vector length does not match VT length");
  const std::size_t mod = p.modulus();
  const std::size_t r = residue(s);
  std::vector<BitVector> out;
  for (std::size_t pos : s.ones()) {
    if ((r + mod - pos % mod) % mod == p.a) {
      BitVector c = s;
      c.reset(pos);
      out.push_back(std::move(c));
    }
  }
  if (out.size() > 1) {
    throw InvariantViolation("two codewords of VT_" + std::to_string(p.a) + " cover " + s.to_string());
  }
  return out;
}

/// First `count` residues of the profile's order.
inline std::vector<std::size_t> top_residues(const ResidueProfile& profile, std::size_t count) {
  if (count == 0 || count > profile.m + 1) {
    throw InputError("residue budget " + std::to_string(count) + " outside 1.." + std::to_string(profile.m + 1));
  }
  return {profile.order.begin(), profile.order.begin() + static_cast<std::ptrdiff_t>(count)};
}

/// Checks sum_{i<=l} |T_(i)| >= ((l+1) / (3n)) * C(m,k) with n = m/2, exactly.
inline bool check_prefix_mass(const ResidueProfile& profile, std::size_t ell) {
  if (profile.m % 2 != 0) throw InputError("prefix-mass check needs even length");
  if (ell > profile.m) throw InputError("prefix index outside 0..m");
  const std::size_t n = profile.m / 2;
  BigCount prefix = 0;
  for (std::size_t i = 0; i <= ell; ++i) prefix += profile.counts[profile.order[i]];
  return prefix * (3 * n) >= profile.total() * (ell + 1);
}

/// Result of the exhaustive unique-neighborhood and partition check.
struct UniquenessReport {
  std::size_t m = 0;
  std::uint64_t vectors_checked = 0;
  std::size_t max_covered = 0;   ///< max over s and a of |covered_codewords(s, a)|
  bool partition_ok = true;      ///< sum_a counts[a] == C(m,k) and DP == enumeration, every k

  bool passed() const { return max_covered <= 1 && partition_ok; }
};

inline constexpr std::size_t kMaxUniqueCheckLength = 24;

/// For every s in {0,1}^m and every residue a, at most one codeword of
/// VT_a(m) covers s; residue counts from the DP match enumeration and sum
/// to C(m,k).
inline UniquenessReport check_unique_neighborhoods(std::size_t m) {
  if (m == 0) throw InputError("length must be positive");
  if (m > kMaxUniqueCheckLength) throw CapacityError("exhaustive check limited to m <= 24");
  const std::size_t mod = m + 1;
  UniquenessReport report;
  report.m = m;
  std::vector<std::vector<std::uint64_t>> enumerated(m + 1, std::vector<std::uint64_t>(mod, 0));
  std::vector<std::size_t> hits(mod, 0);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((bits >> i) & 1U) r += i + 1;
    }
    r %= mod;
    ++enumerated[static_cast<std::size_t>(std::popcount(bits))][r];
    std::fill(hits.begin(), hits.end(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      if ((bits >> i) & 1U) {
        const std::size_t a = (r + mod - (i + 1)) % mod;
        report.max_covered = std::max(report.max_covered, ++hits[a]);
      }
    }
    ++report.vectors_checked;
  }
  const auto profiles = residue_profiles(m, m);
  for (std::size_t k = 0; k <= m; ++k) {
    if (profiles[k].total() != binomial(m, k)) report.partition_ok = false;
    for (std::size_t a = 0; a < mod; ++a) {
      if (profiles[k].counts[a] != BigCount(enumerated[k][a])) report.partition_ok = false;
    }
  }
  return report;
}

}  // namespace oig
