#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond BitVector, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "oig/oig.hpp"

namespace oracle {

/// counts[a] = #{ k-subsets of 1..m with sum of positions = a mod m+1 }.
inline std::vector<std::uint64_t> residue_counts(std::size_t m, std::size_t k) {
  std::vector<std::uint64_t> counts(m + 1, 0);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    if (static_cast<std::size_t>(__builtin_popcountll(bits)) != k) continue;
    std::size_t sum = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((bits >> i) & 1U) sum += i + 1;
    }
    ++counts[sum % (m + 1)];
  }
  return counts;
}

/// Residues sorted by (count desc, residue asc).
inline std::vector<std::size_t> residue_order(const std::vector<std::uint64_t>& counts) {
  std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
  for (std::size_t a = 0; a < counts.size(); ++a) keyed.emplace_back(counts[a], a);
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  std::vector<std::size_t> out;
  for (const auto& kv : keyed) out.push_back(kv.second);
  return out;
}

inline std::uint64_t pascal(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint64_t>> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    t[i].assign(i + 1, 1);
    for (std::size_t j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return k > n ? 0 : t[n][k];
}

struct SmallGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Edges between hypotheses at Hamming distance one, in no particular order.
inline SmallGraph hamming_graph(const std::vector<oig::BitVector>& hyps) {
  SmallGraph g;
  g.vertices = hyps.size();
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    for (std::size_t j = i + 1; j < hyps.size(); ++j) {
      if (oig::hamming_distance(hyps[i], hyps[j]) == 1) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

/// Minimum over all 2^|E| orientations of the maximum out-degree. Edges in
/// `fixed_head` (edge index -> head vertex) are not enumerated.
inline std::size_t min_max_outdegree(const SmallGraph& g,
                                     const std::vector<std::optional<std::size_t>>& fixed_head = {}) {
  std::vector<std::size_t> free_edges;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    if (fixed_head.empty() || !fixed_head[e]) free_edges.push_back(e);
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> out(g.vertices);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_edges.size()); ++mask) {
    std::fill(out.begin(), out.end(), 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [u, v] = g.edges[e];
      if (!fixed_head.empty() && fixed_head[e]) {
        ++out[*fixed_head[e] == u ? v : u];
      }
    }
    for (std::size_t i = 0; i < free_edges.size(); ++i) {
      const auto [u, v] = g.edges[free_edges[i]];
      ++out[((mask >> i) & 1U) ? u : v];
    }
    best = std::min(best, g.vertices == 0 ? 0 : *std::max_element(out.begin(), out.end()));
  }
  return best;
}

/// Largest shattered subset size, trying every subset of the domain.
inline std::size_t vc_dimension(const std::vector<oig::BitVector>& hyps, std::size_t m) {
  std::size_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size <= best) continue;
    std::set<std::uint64_t> patterns;
    for (const auto& h : hyps) {
      std::uint64_t p = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (((mask >> i) & 1U) && h.test(i + 1)) p |= std::uint64_t{1} << i;
      }
      patterns.insert(p);
    }
    if (patterns.size() == (std::size_t{1} << size)) best = size;
  }
  return best;
}

inline oig::BitVector from_mask(std::size_t m, std::uint64_t mask) {
  oig::BitVector v(m);
  for (std::size_t i = 0; i < m; ++i) {
    if ((mask >> i) & 1U) v.set(i + 1);
  }
  return v;
}

/// {x not in s : s is a selected neighbor of s + {x}}, straight from the
/// definition via select_neighbors.
inline std::vector<std::size_t> extension_neighborhood(const oig::BitVector& s, const oig::BipartiteView& view) {
  std::vector<std::size_t> out;
  for (std::size_t x = 1; x <= s.size(); ++x) {
    if (s.test(x)) continue;
    oig::BitVector v = s;
    v.set(x);
    for (const auto& p : oig::select_neighbors(v, view)) {
      if (p == s) out.push_back(x);
    }
  }
  return out;
}

/// Prediction through the full orientation of every extension, without
/// any fast path: for x outside S take the head of the f_0 edge on x.
template <class Rule>
oig::BitVector realize_by_orientation(const Rule& rule, const oig::BitVector& s) {
  oig::BitVector h(s.size());
  const oig::BitVector zero_target(s.size());
  for (std::size_t x = 1; x <= s.size(); ++x) {
    if (s.test(x)) continue;
    oig::BitVector ext = s;
    ext.set(x);
    const oig::Orientation o = rule.orient(ext);
    const auto& g = o.graph();
    const std::size_t width = ext.ones_count();
    const oig::BitVector lower_h = zero_target.restrict_to(ext);
    std::size_t coord = 0;
    for (std::size_t p : ext.ones()) {
      ++coord;
      if (p == x) break;
    }
    const oig::BitVector upper = oig::BitVector::unit(width, coord);
    const auto e = g.find_edge(g.vertex_index(lower_h), g.vertex_index(upper));
    if (e && g.vertex(o.head(*e)) == upper) h.set(x);
  }
  return h;
}

}  // namespace oracle
