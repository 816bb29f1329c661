#pragma once

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "oig/adversarial.hpp"
#include "oig/bit_vector.hpp"
#include "oig/concept_class.hpp"
#include "oig/error.hpp"
#include "oig/graph.hpp"
#include "oig/keyed_mix.hpp"
#include "oig/rational.hpp"

namespace oig {

/// An edge of G(host | subset) named by its endpoints: `lower` has 0 and
/// `upper` has 1 at projected coordinate `coord`, and they agree elsewhere.
struct EdgeQuery {
  const BitVector& lower;
  const BitVector& upper;
  std::size_t coord;
};

/// An orientation rule maps every finite subset of the domain to an
/// orientation of the one-inclusion graph of the host class projected onto
/// it. Rules are pure; `head_is_upper` must agree with `orient`.
template <class R>
concept OrientationRule = requires(const R& rule, const BitVector& subset, const EdgeQuery& q) {
  { rule.name() } -> std::convertible_to<std::string_view>;
  { rule.host() } -> std::same_as<const ProjectedClass&>;
  { rule.orient(subset) } -> std::same_as<Orientation>;
  { rule.head_is_upper(subset, q) } -> std::same_as<bool>;
};

namespace detail {

inline bool head_from_orientation(const Orientation& o, const EdgeQuery& q) {
  const OneInclusionGraph& g = o.graph();
  const std::size_t lo = g.vertex_index(q.lower);
  const std::size_t hi = g.vertex_index(q.upper);
  const auto e = g.find_edge(lo, hi);
  if (!e) throw InputError("no edge between " + q.lower.to_string() + " and " + q.upper.to_string());
  return o.head(*e) == hi;
}

inline bool is_zero_edge(const EdgeQuery& q) { return q.lower.none() && q.upper.ones_count() == 1; }

/// Whether the host contains the zero function and every unit vector, so
/// every projection has the full star around zero.
inline bool has_canonical_star(const ProjectedClass& host) {
  return is_star_system(host, StarSystem::canonical(host.domain_size()));
}

inline void check_subset(const ProjectedClass& host, const BitVector& subset) {
  if (subset.size() != host.domain_size()) throw InputError("subset length does not match host domain size");
}

}  // namespace detail

/// Minimum max-out-degree orientation of every projection.
class FlowRule {
 public:
  explicit FlowRule(std::shared_ptr<const ProjectedClass> host) : host_(std::move(host)) {}

  std::string_view name() const noexcept { return "flow"; }
  const ProjectedClass& host() const noexcept { return *host_; }

  Orientation orient(const BitVector& subset) const {
    detail::check_subset(*host_, subset);
    return orient_min_max_outdegree(build_graph(project(*host_, subset)));
  }

  bool head_is_upper(const BitVector& subset, const EdgeQuery& q) const {
    return detail::head_from_orientation(orient(subset), q);
  }

 private:
  std::shared_ptr<const ProjectedClass> host_;
};

/// Closure orientation centered on the zero function of each projection.
class ClosureRule {
 public:
  explicit ClosureRule(std::shared_ptr<const ProjectedClass> host) : host_(std::move(host)) {}

  std::string_view name() const noexcept { return "closure"; }
  const ProjectedClass& host() const noexcept { return *host_; }

  Orientation orient(const BitVector& subset) const {
    detail::check_subset(*host_, subset);
    return closure_orientation(build_graph(project(*host_, subset)), BitVector(subset.ones_count()));
  }

  bool head_is_upper(const BitVector& subset, const EdgeQuery& q) const {
    if (q.lower.none()) return false;
    return detail::head_from_orientation(orient(subset), q);
  }

 private:
  std::shared_ptr<const ProjectedClass> host_;
};

/// Uncoordinated baseline: in each projection exactly one edge at the zero
/// function, chosen by keyed hashing of (seed, subset), points outward;
/// the other zero edges point to zero and the rest follow the flow baseline.
class RandomFlipRule {
 public:
  RandomFlipRule(std::shared_ptr<const ProjectedClass> host, std::uint64_t seed)
      : host_(std::move(host)), seed_(seed), star_(detail::has_canonical_star(*host_)) {}

  std::string_view name() const noexcept { return "random_flip"; }
  const ProjectedClass& host() const noexcept { return *host_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Index (0-based, among the zero vertex's edges in canonical order) of
  /// the flipped edge when there are `count` of them.
  std::size_t flip_index(const BitVector& subset, std::size_t count) const {
    SplitMixStream stream(KeyedMix(seed_, MixTag::kFlip).add(subset.words()).value());
    return static_cast<std::size_t>(stream.below(count));
  }

  Orientation orient(const BitVector& subset) const {
    detail::check_subset(*host_, subset);
    auto g = build_graph(project(*host_, subset));
    Orientation base = orient_min_max_outdegree(g);
    auto zero = g->find_vertex(BitVector(subset.ones_count()));
    if (!zero) return base;
    std::vector<std::size_t> heads = base.heads();
    const auto& incident = g->incident(*zero);
    if (incident.empty()) return base;
    const std::size_t flip = flip_index(subset, incident.size());
    for (std::size_t i = 0; i < incident.size(); ++i) {
      const Edge& ed = g->edge(incident[i]);
      const std::size_t other = ed.u == *zero ? ed.v : ed.u;
      heads[incident[i]] = i == flip ? other : *zero;
    }
    return Orientation(std::move(g), std::move(heads));
  }

  bool head_is_upper(const BitVector& subset, const EdgeQuery& q) const {
    if (star_ && detail::is_zero_edge(q)) {
      // Zero's edges are ordered by the neighbor's index; unit vectors sort
      // with the last coordinate first.
      const std::size_t width = subset.ones_count();
      return flip_index(subset, width) == width - q.coord;
    }
    return detail::head_from_orientation(orient(subset), q);
  }

 private:
  std::shared_ptr<const ProjectedClass> host_;
  std::uint64_t seed_;
  bool star_;
};

/// The adversarial rule: for (k+1)-subsets with 1 <= k <= n the zero edges
/// follow the keyed bipartite selection; other subsets use the closure
/// orientation.
class AdversarialRule {
 public:
  AdversarialRule(std::shared_ptr<const ProjectedClass> host, AdversarialParams params)
      : host_(std::move(host)), construction_(std::make_shared<const AdversarialConstruction>(params)) {
    if (host_->domain_size() != params.m()) {
      throw ConstructionError("host domain size must be 2n = " + std::to_string(params.m()));
    }
    if (!host_->contains(BitVector(host_->domain_size()))) {
      throw ConstructionError("host class must contain the zero function");
    }
  }

  std::string_view name() const noexcept { return "adversarial"; }
  const ProjectedClass& host() const noexcept { return *host_; }
  const AdversarialConstruction& construction() const noexcept { return *construction_; }
  const AdversarialParams& params() const noexcept { return construction_->params(); }

  /// Whether subsets of this size are handled by the bipartite construction.
  bool in_construction(const BitVector& subset) const {
    const std::size_t w = subset.ones_count();
    return w >= 2 && w - 1 <= params().n;
  }

  Orientation orient(const BitVector& subset) const {
    detail::check_subset(*host_, subset);
    if (!in_construction(subset)) {
      return closure_orientation(build_graph(project(*host_, subset)), BitVector(subset.ones_count()));
    }
    return orient_extension(subset, *host_, construction_->view(subset.ones_count() - 1));
  }

  bool head_is_upper(const BitVector& subset, const EdgeQuery& q) const {
    if (detail::is_zero_edge(q)) {
      if (!in_construction(subset)) return false;
      const std::vector<std::size_t> points = subset.ones();
      const std::size_t x = points.at(q.coord - 1);
      const BipartiteView& view = construction_->view(points.size() - 1);
      const auto drops = detail::member_drops(points, residue(subset), view);
      return detail::drop_selected(subset, drops, x, view);
    }
    return detail::head_from_orientation(orient(subset), q);
  }

 private:
  std::shared_ptr<const ProjectedClass> host_;
  std::shared_ptr<const AdversarialConstruction> construction_;
};

using AnyRule = std::variant<ClosureRule, FlowRule, RandomFlipRule, AdversarialRule>;

namespace detail {

/// Hypotheses agreeing with `labels` on every point of `train_set`.
inline std::vector<const BitVector*> consistent_hypotheses(const ProjectedClass& host, const BitVector& train_set,
                                                           const BitVector& labels) {
  train_set.require_same_length(labels);
  if (train_set.size() != host.domain_size()) throw InputError("training set length does not match host domain");
  const BitVector target = labels & train_set;
  std::vector<const BitVector*> out;
  for (const auto& h : host.hypotheses()) {
    if ((h & train_set) == target) out.push_back(&h);
  }
  if (out.empty()) throw RealizabilityError("no hypothesis is consistent with the training labels");
  return out;
}

template <OrientationRule Rule>
bool predict_with(const Rule& rule, const BitVector& train_set, const std::vector<const BitVector*>& consistent,
                  std::size_t x) {
  const BitVector* zero_side = nullptr;
  const BitVector* one_side = nullptr;
  for (const BitVector* h : consistent) {
    (h->test(x) ? one_side : zero_side) = h;
    if (zero_side && one_side) break;
  }
  if (!one_side) return false;
  if (!zero_side) return true;
  // Consistent hypotheses agree on the training set, so their restrictions
  // to train_set + {x} are exactly two vertices joined by an edge on x.
  BitVector subset = train_set;
  subset.set(x);
  const BitVector lower = zero_side->restrict_to(subset);
  const BitVector upper = one_side->restrict_to(subset);
  std::size_t coord = 0;
  for (std::size_t p : subset.ones()) {
    ++coord;
    if (p == x) break;
  }
  return rule.head_is_upper(subset, EdgeQuery{lower, upper, coord});
}

}  // namespace detail

/// One-inclusion graph prediction at domain point x (1-based) after
/// training on the points of `train_set` labeled by `labels`.
template <OrientationRule Rule>
bool predict(const Rule& rule, const BitVector& train_set, const BitVector& labels, std::size_t x) {
  if (x == 0 || x > train_set.size()) throw InputError("query point outside the domain");
  return detail::predict_with(rule, train_set, detail::consistent_hypotheses(rule.host(), train_set, labels), x);
}

inline bool predict(const AnyRule& rule, const BitVector& train_set, const BitVector& labels, std::size_t x) {
  return std::visit([&](const auto& r) { return predict(r, train_set, labels, x); }, rule);
}

/// The hypothesis the algorithm outputs: its prediction at every domain point.
template <OrientationRule Rule>
BitVector realize_hypothesis(const Rule& rule, const BitVector& train_set, const BitVector& labels) {
  const auto consistent = detail::consistent_hypotheses(rule.host(), train_set, labels);
  BitVector out(train_set.size());
  for (std::size_t x = 1; x <= train_set.size(); ++x) {
    if (detail::predict_with(rule, train_set, consistent, x)) out.set(x);
  }
  return out;
}

inline BitVector realize_hypothesis(const AnyRule& rule, const BitVector& train_set, const BitVector& labels) {
  return std::visit([&](const auto& r) { return realize_hypothesis(r, train_set, labels); }, rule);
}

inline const ProjectedClass& rule_host(const AnyRule& rule) {
  return std::visit([](const auto& r) -> const ProjectedClass& { return r.host(); }, rule);
}

inline std::string_view rule_name(const AnyRule& rule) {
  return std::visit([](const auto& r) { return r.name(); }, rule);
}

/// Fraction of domain points where h and target disagree, under the
/// uniform distribution on the domain.
inline Rational exact_error(const BitVector& h, const BitVector& target) {
  return Rational(static_cast<std::int64_t>(hamming_distance(h, target)), static_cast<std::int64_t>(h.size()));
}

}  // namespace oig
