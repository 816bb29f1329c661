#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "oig/bit_vector.hpp"
#include "oig/concept_class.hpp"
#include "oig/error.hpp"

namespace oig {

/// Edge of a one-inclusion graph between vertex indices u < v that differ
/// exactly at `coord` (1-based). Vertex u is the one with 0 at `coord`,
/// because vertices are in lexicographic order.
struct Edge {
  std::size_t u;
  std::size_t v;
  std::size_t coord;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Vertices are the hypotheses of a projected class; edges join pairs at
/// Hamming distance one. Edges are sorted by (u, v).
class OneInclusionGraph {
 public:
  explicit OneInclusionGraph(ProjectedClass cls) : class_(std::move(cls)), incident_(class_.size()) {
    const auto& hyps = class_.hypotheses();
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      BitVector probe = hyps[i];
      for (std::size_t c = 1; c <= class_.domain_size(); ++c) {
        if (probe.test(c)) continue;
        probe.set(c);
        const std::size_t j = class_.index_of(probe);
        if (j < hyps.size()) edges_.push_back(Edge{i, j, c});
        probe.reset(c);
      }
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[edges_[e].u].push_back(e);
      incident_[edges_[e].v].push_back(e);
    }
  }

  const ProjectedClass& vertex_class() const noexcept { return class_; }
  std::size_t vertex_count() const noexcept { return class_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const BitVector& vertex(std::size_t i) const { return class_[i]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

  /// Edge ids incident to vertex i, ascending.
  const std::vector<std::size_t>& incident(std::size_t i) const { return incident_.at(i); }

  std::size_t vertex_index(const BitVector& h) const {
    const std::size_t i = class_.index_of(h);
    if (i == class_.size()) throw InputError("vertex " + h.to_string() + " not in graph");
    return i;
  }

  std::optional<std::size_t> find_vertex(const BitVector& h) const {
    const std::size_t i = class_.index_of(h);
    if (i == class_.size()) return std::nullopt;
    return i;
  }

  /// Edge id joining vertex indices a and b, if any.
  std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t e : incident_.at(a)) {
      if (edges_[e].u == a && edges_[e].v == b) return e;
    }
    return std::nullopt;
  }

 private:
  ProjectedClass class_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

inline std::shared_ptr<const OneInclusionGraph> build_graph(ProjectedClass cls) {
  return std::make_shared<const OneInclusionGraph>(std::move(cls));
}

/// Assignment of a head vertex to every edge of a graph.
class Orientation {
 public:
  Orientation(std::shared_ptr<const OneInclusionGraph> graph, std::vector<std::size_t> heads)
      : graph_(std::move(graph)), heads_(std::move(heads)) {
    if (!graph_) throw InputError("orientation needs a graph");
    if (heads_.size() != graph_->edge_count()) throw InputError("orientation must give every edge a head");
    for (std::size_t e = 0; e < heads_.size(); ++e) {
      const Edge& ed = graph_->edge(e);
      if (heads_[e] != ed.u && heads_[e] != ed.v) throw InputError("head is not an endpoint of its edge");
    }
  }

  const OneInclusionGraph& graph() const noexcept { return *graph_; }
  const std::shared_ptr<const OneInclusionGraph>& graph_ptr() const noexcept { return graph_; }
  const std::vector<std::size_t>& heads() const noexcept { return heads_; }
  std::size_t head(std::size_t e) const { return heads_.at(e); }

  std::size_t out_degree(std::size_t vertex) const {
    if (vertex >= graph_->vertex_count()) throw InputError("unknown vertex index");
    std::size_t out = 0;
    for (std::size_t e : graph_->incident(vertex)) {
      if (heads_[e] != vertex) ++out;
    }
    return out;
  }

  std::size_t out_degree(const BitVector& vertex) const { return out_degree(graph_->vertex_index(vertex)); }

  std::size_t max_out_degree() const {
    std::vector<std::size_t> out(graph_->vertex_count(), 0);
    for (std::size_t e = 0; e < heads_.size(); ++e) {
      const Edge& ed = graph_->edge(e);
      ++out[heads_[e] == ed.u ? ed.v : ed.u];
    }
    return out.empty() ? 0 : *std::max_element(out.begin(), out.end());
  }

 private:
  std::shared_ptr<const OneInclusionGraph> graph_;
  std::vector<std::size_t> heads_;
};

namespace detail {

/// Dinic max-flow with unit-ish capacities. Arcs are scanned in insertion
/// order, so results are reproducible.
class Dinic {
 public:
  explicit Dinic(std::size_t nodes) : adj_(nodes), level_(nodes), cursor_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, long long cap) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0});
    return arcs_.size() - 2;
  }

  long long flow_on(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

  long long max_flow(std::size_t s, std::size_t t) {
    long long total = 0;
    while (bfs(s, t)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (long long pushed = dfs(s, t, std::numeric_limits<long long>::max())) total += pushed;
    }
    return total;
  }

 private:
  struct Arc {
    std::size_t to;
    long long cap;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t x = q.front();
      q.pop();
      for (std::size_t a : adj_[x]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[x] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[t] >= 0;
  }

  long long dfs(std::size_t x, std::size_t t, long long limit) {
    if (x == t) return limit;
    for (std::size_t& i = cursor_[x]; i < adj_[x].size(); ++i) {
      const std::size_t a = adj_[x][i];
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[x] + 1) continue;
      if (long long got = dfs(arc.to, t, std::min(limit, arc.cap))) {
        arc.cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

/// Tail assignment for free edges with every vertex's total out-degree at
/// most `target`, given the out-degree already committed in `base`.
inline std::optional<std::vector<std::size_t>> assign_tails(const OneInclusionGraph& g,
                                                            const std::vector<std::size_t>& free_edges,
                                                            const std::vector<std::size_t>& base,
                                                            std::size_t target) {
  const std::size_t nv = g.vertex_count();
  const std::size_t ne = free_edges.size();
  const std::size_t source = 0;
  const std::size_t sink = 1 + nv + ne;
  Dinic flow(sink + 1);
  for (std::size_t v = 0; v < nv; ++v) {
    if (base[v] > target) return std::nullopt;
    flow.add_arc(source, 1 + v, static_cast<long long>(target - base[v]));
  }
  std::vector<std::size_t> arc_u(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    const Edge& e = g.edge(free_edges[i]);
    arc_u[i] = flow.add_arc(1 + e.u, 1 + nv + i, 1);
    flow.add_arc(1 + e.v, 1 + nv + i, 1);
    flow.add_arc(1 + nv + i, sink, 1);
  }
  if (flow.max_flow(source, sink) != static_cast<long long>(ne)) return std::nullopt;
  std::vector<std::size_t> tails(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    const Edge& e = g.edge(free_edges[i]);
    tails[i] = flow.flow_on(arc_u[i]) > 0 ? e.u : e.v;
  }
  return tails;
}

/// Orients the edges whose entry in `fixed_heads` is empty so that the
/// maximum total out-degree is minimal. The optimum is certified by
/// infeasibility one below it.
inline Orientation orient_with_fixed(std::shared_ptr<const OneInclusionGraph> g,
                                     const std::vector<std::optional<std::size_t>>& fixed_heads) {
  std::vector<std::size_t> base(g->vertex_count(), 0);
  std::vector<std::size_t> free_edges;
  std::vector<std::size_t> free_degree(g->vertex_count(), 0);
  for (std::size_t e = 0; e < g->edge_count(); ++e) {
    const Edge& ed = g->edge(e);
    if (fixed_heads[e]) {
      ++base[*fixed_heads[e] == ed.u ? ed.v : ed.u];
    } else {
      free_edges.push_back(e);
      ++free_degree[ed.u];
      ++free_degree[ed.v];
    }
  }
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t v = 0; v < g->vertex_count(); ++v) {
    lo = std::max(lo, base[v]);
    hi = std::max(hi, base[v] + free_degree[v]);
  }
  const std::size_t floor = lo;
  std::optional<std::vector<std::size_t>> best;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto tails = assign_tails(*g, free_edges, base, mid)) {
      best = std::move(tails);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!best || hi != lo) best = assign_tails(*g, free_edges, base, lo);
  if (!best) throw InvariantViolation("orientation infeasible at the trivial out-degree bound");
  if (lo > floor && assign_tails(*g, free_edges, base, lo - 1)) {
    throw InvariantViolation("flow orientation not minimal");
  }

  std::vector<std::size_t> heads(g->edge_count());
  for (std::size_t e = 0; e < g->edge_count(); ++e) {
    if (fixed_heads[e]) heads[e] = *fixed_heads[e];
  }
  for (std::size_t i = 0; i < free_edges.size(); ++i) {
    const Edge& ed = g->edge(free_edges[i]);
    heads[free_edges[i]] = (*best)[i] == ed.u ? ed.v : ed.u;
  }
  return Orientation(std::move(g), std::move(heads));
}

}  // namespace detail

/// Orientation minimizing the maximum out-degree (binary search on the
/// target with a feasibility max-flow). For a projection of a class of VC
/// dimension d the optimum never exceeds d.
inline Orientation orient_min_max_outdegree(std::shared_ptr<const OneInclusionGraph> g) {
  std::vector<std::optional<std::size_t>> fixed(g->edge_count());
  return detail::orient_with_fixed(std::move(g), fixed);
}

/// Every edge at `center` points to the center; the remaining edges are
/// oriented by flow, accounting for the out-edges already committed.
inline Orientation closure_orientation(std::shared_ptr<const OneInclusionGraph> g, const BitVector& center) {
  const std::size_t c = g->vertex_index(center);
  std::vector<std::optional<std::size_t>> fixed(g->edge_count());
  for (std::size_t e : g->incident(c)) fixed[e] = c;
  return detail::orient_with_fixed(std::move(g), fixed);
}

}  // namespace oig
