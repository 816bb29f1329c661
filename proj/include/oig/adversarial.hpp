#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "oig/bit_vector.hpp"
#include "oig/combinatorics.hpp"
#include "oig/concept_class.hpp"
#include "oig/error.hpp"
#include "oig/graph.hpp"
#include "oig/keyed_mix.hpp"
#include "oig/rational.hpp"
#include "oig/vt_code.hpp"

namespace oig {

/// Parameters of the adversarial orientation rule on a star of 2n points.
struct AdversarialParams {
  std::size_t n = 1;
  std::size_t d = 1;
  Rational delta{1, 10};
  std::uint64_t seed = 0;

  std::size_t m() const noexcept { return 2 * n; }

  /// Residue budget 4 * ceil(delta * n).
  std::size_t residue_budget() const {
    return 4 * static_cast<std::size_t>(ceil_nonneg(delta * static_cast<std::int64_t>(n)));
  }

  /// Residues actually used; the budget is clamped to the m + 1 classes.
  std::size_t effective_budget() const { return std::min(residue_budget(), m() + 1); }

  void validate() const {
    if (n == 0) throw ConfigError("n must be at least 1");
    if (d == 0) throw ConfigError("d must be at least 1");
    if (delta <= 0 || delta >= 1) throw ConfigError("delta must lie strictly between 0 and 1");
  }

  /// Non-fatal notes about parameters outside the regime where the
  /// lower-bound argument applies.
  std::vector<std::string> warnings() const {
    std::vector<std::string> out;
    if (residue_budget() > m() + 1) {
      out.push_back("residue budget " + std::to_string(residue_budget()) + " exceeds the " +
                    std::to_string(m() + 1) + " residue classes; clamped");
    }
    if (delta * static_cast<std::int64_t>(n) < static_cast<std::int64_t>(d)) {
      out.push_back("delta * n < d: outside the regime delta in (c1 d / n, c2)");
    }
    return out;
  }

  /// |N| >= d / (8 delta), compared exactly.
  bool is_heavy(std::size_t neighborhood) const {
    return Rational(static_cast<std::int64_t>(neighborhood)) * 8 * delta >= Rational(static_cast<std::int64_t>(d));
  }

  /// Error level d / (16 delta n) guaranteed for heavy training sets.
  Rational error_floor() const {
    return Rational(static_cast<std::int64_t>(d)) / (Rational(16) * delta * static_cast<std::int64_t>(n));
  }
};

/// The bipartite graph between k-sets in the top residue classes (V_1) and
/// (k+1)-sets (V_2), evaluated lazily. A k-set s is in V_1 iff residue(s) is
/// one of the top residues for weight k.
struct BipartiteView {
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t d = 1;
  std::uint64_t seed = 0;
  std::vector<std::size_t> top;   ///< top residues in profile order
  std::vector<char> in_top;       ///< indexed by residue 0..m
  BigCount v1_size = 0;           ///< |V_1|

  std::size_t modulus() const noexcept { return m + 1; }

  bool in_v1(const BitVector& s) const {
    if (s.size() != m) throw InputError("training set length does not match domain size");
    return s.ones_count() == k && in_top[residue(s)] != 0;
  }
};

namespace detail {

inline std::size_t sub_mod(std::size_t r, std::size_t pos, std::size_t mod) { return (r + mod - pos % mod) % mod; }

/// Drop positions y of v (ascending) with v \ {y} in V_1.
inline std::vector<std::size_t> member_drops(const std::vector<std::size_t>& v_ones, std::size_t v_residue,
                                             const BipartiteView& view) {
  std::vector<std::size_t> drops;
  for (std::size_t y : v_ones) {
    if (view.in_top[sub_mod(v_residue, y, view.modulus())]) drops.push_back(y);
  }
  return drops;
}

inline KeyedMix selection_base(const BitVector& v, const BipartiteView& view) {
  KeyedMix base(view.seed, MixTag::kSelect);
  base.add(static_cast<std::uint64_t>(view.k));
  base.add(v.words());
  return base;
}

/// Indices (into member_drops order) of the min(d, count) smallest keys.
inline std::vector<std::size_t> chosen_indices(const KeyedMix& base, std::size_t count, std::size_t d) {
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  if (count <= d) return idx;
  std::vector<std::uint64_t> keys(count);
  for (std::size_t j = 0; j < count; ++j) keys[j] = KeyedMix(base).add(j).value();
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(d), idx.end(),
                    [&](std::size_t a, std::size_t b) { return keys[a] != keys[b] ? keys[a] < keys[b] : a < b; });
  idx.resize(d);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Whether v \ {x} is among the selected neighbors of v. `drops` must be
/// member_drops of v.
inline bool drop_selected(const BitVector& v, const std::vector<std::size_t>& drops, std::size_t x,
                          const BipartiteView& view) {
  auto it = std::lower_bound(drops.begin(), drops.end(), x);
  if (it == drops.end() || *it != x) return false;
  if (drops.size() <= view.d) return true;
  const std::size_t target = static_cast<std::size_t>(it - drops.begin());
  const KeyedMix base = selection_base(v, view);
  const std::uint64_t target_key = KeyedMix(base).add(target).value();
  std::size_t smaller = 0;
  for (std::size_t j = 0; j < drops.size(); ++j) {
    if (j == target) continue;
    const std::uint64_t key = KeyedMix(base).add(j).value();
    if (key < target_key || (key == target_key && j < target)) {
      if (++smaller >= view.d) return false;
    }
  }
  return true;
}

inline void require_weight(const BitVector& v, std::size_t weight, const BipartiteView& view) {
  if (v.size() != view.m) throw InputError("vector length does not match domain size");
  if (v.ones_count() != weight) {
    throw InputError("expected " + std::to_string(weight) + " ones, got " + std::to_string(v.ones_count()));
  }
}

}  // namespace detail

/// M(v): predecessors of a (k+1)-set v lying in V_1, in canonical order.
inline std::vector<BitVector> m_set(const BitVector& v, const BipartiteView& view) {
  detail::require_weight(v, view.k + 1, view);
  std::vector<BitVector> out;
  for (std::size_t y : detail::member_drops(v.ones(), residue(v), view)) {
    BitVector p = v;
    p.reset(y);
    out.push_back(std::move(p));
  }
  return out;
}

/// N(v): min(d, |M(v)|) members of M(v) chosen by keyed hashing of
/// (seed, k, v, index); the d smallest keys win.
inline std::vector<BitVector> select_neighbors(const BitVector& v, const BipartiteView& view) {
  detail::require_weight(v, view.k + 1, view);
  const auto drops = detail::member_drops(v.ones(), residue(v), view);
  std::vector<BitVector> out;
  for (std::size_t j : detail::chosen_indices(detail::selection_base(v, view), drops.size(), view.d)) {
    BitVector p = v;
    p.reset(drops[j]);
    out.push_back(std::move(p));
  }
  return out;
}

/// Points x outside s with s among the selected neighbors of s + {x}.
/// Empty unless s is in V_1.
inline std::vector<std::size_t> extension_neighborhood(const BitVector& s, const BipartiteView& view) {
  detail::require_weight(s, view.k, view);
  std::vector<std::size_t> out;
  const std::size_t rs = residue(s);
  if (!view.in_top[rs]) return out;
  const std::vector<std::size_t> s_ones = s.ones();
  BitVector v = s;
  for (std::size_t x = 1; x <= view.m; ++x) {
    if (s.test(x)) continue;
    v.set(x);
    std::vector<std::size_t> v_ones;
    v_ones.reserve(s_ones.size() + 1);
    auto split = std::lower_bound(s_ones.begin(), s_ones.end(), x);
    v_ones.insert(v_ones.end(), s_ones.begin(), split);
    v_ones.push_back(x);
    v_ones.insert(v_ones.end(), split, s_ones.end());
    const auto drops = detail::member_drops(v_ones, (rs + x) % view.modulus(), view);
    if (detail::drop_selected(v, drops, x, view)) out.push_back(x);
    v.reset(x);
  }
  return out;
}

/// Residue-class tables and per-weight views for one parameter set.
class AdversarialConstruction {
 public:
  explicit AdversarialConstruction(AdversarialParams params) : params_(params) {
    params_.validate();
    const std::size_t m = params_.m();
    const std::size_t budget = params_.effective_budget();
    const auto profiles = residue_profiles(m, params_.n);
    views_.reserve(profiles.size());
    for (const auto& profile : profiles) {
      BipartiteView view;
      view.m = m;
      view.k = profile.k;
      view.d = params_.d;
      view.seed = params_.seed;
      view.top = top_residues(profile, budget);
      view.in_top.assign(m + 1, 0);
      for (std::size_t r : view.top) {
        view.in_top[r] = 1;
        view.v1_size += profile.counts[r];
      }
      views_.push_back(std::move(view));
    }
  }

  const AdversarialParams& params() const noexcept { return params_; }

  /// View for training-set size k in 0..n.
  const BipartiteView& view(std::size_t k) const {
    if (k >= views_.size()) throw InputError("training-set size " + std::to_string(k) + " outside 0..n");
    return views_[k];
  }

  bool has_view(std::size_t k) const noexcept { return k < views_.size(); }

  /// s is in W_1: a training set of size 1..n in V_1 with |N(s)| >= d / (8 delta).
  bool is_in_w1(const BitVector& s) const {
    const std::size_t k = s.ones_count();
    if (k == 0 || k > params_.n) throw InputError("W_1 membership needs 1 <= |s| <= n");
    const BipartiteView& v = view(k);
    if (!v.in_v1(s)) return false;
    return params_.is_heavy(extension_neighborhood(s, v).size());
  }

 private:
  AdversarialParams params_;
  std::vector<BipartiteView> views_;
};

/// Orientation of G(host | s_prime): a minimum max-out-degree baseline, then
/// each f_0 edge toward the dropped point of a selected neighbor points
/// outward and every other f_0 edge points to f_0.
inline Orientation orient_extension(const BitVector& s_prime, const ProjectedClass& host, const BipartiteView& view) {
  detail::require_weight(s_prime, view.k + 1, view);
  auto g = build_graph(project(host, s_prime));
  const std::size_t width = s_prime.ones_count();
  const auto zero = g->find_vertex(BitVector(width));
  if (!zero) throw ConstructionError("zero function missing from projection onto " + s_prime.to_string());

  Orientation baseline = orient_min_max_outdegree(g);
  std::vector<std::size_t> heads = baseline.heads();

  const std::vector<std::size_t> points = s_prime.ones();
  std::vector<char> outward(width + 1, 0);
  for (const BitVector& s : select_neighbors(s_prime, view)) {
    const BitVector diff = s_prime ^ s;
    const std::size_t x = diff.ones().front();
    const std::size_t coord =
        static_cast<std::size_t>(std::lower_bound(points.begin(), points.end(), x) - points.begin()) + 1;
    outward[coord] = 1;
  }
  for (std::size_t e : g->incident(*zero)) {
    const Edge& ed = g->edge(e);
    const std::size_t other = ed.u == *zero ? ed.v : ed.u;
    heads[e] = outward[ed.coord] ? other : *zero;
  }
  return Orientation(std::move(g), std::move(heads));
}

/// Outcome of checking the matching-lemma conclusions for one weight k.
struct MatchingReport {
  std::size_t k = 0;
  bool exhaustive = true;
  bool out_degree_ok = true;
  std::size_t max_selected = 0;    ///< max |N(v)| over the checked v in V_2
  std::size_t max_m_set = 0;       ///< max |M(v)| over the checked v in V_2
  std::uint64_t v2_checked = 0;
  std::uint64_t v1_checked = 0;    ///< |V_1| (exhaustive) or sample count
  std::uint64_t heavy = 0;

  double heavy_fraction() const { return v1_checked == 0 ? 1.0 : static_cast<double>(heavy) / v1_checked; }

  /// heavy / |V_1| >= 3/4, exactly.
  bool heavy_ok() const { return 4 * heavy >= 3 * v1_checked; }

  bool accepted() const { return out_degree_ok && heavy_ok(); }
};

enum class VerifyMode { kExhaustive, kSampled };

inline constexpr std::uint64_t kMaxExhaustiveSets = 4'000'000;

namespace detail {

/// Uniform k-subset of 1..m (Floyd's algorithm).
inline BitVector random_subset(std::size_t m, std::size_t k, SplitMixStream& rng) {
  BitVector s(m);
  for (std::size_t j = m - k + 1; j <= m; ++j) {
    const std::size_t t = 1 + static_cast<std::size_t>(rng.below(j));
    if (s.test(t)) {
      s.set(j);
    } else {
      s.set(t);
    }
  }
  return s;
}

inline void check_v2_member(const BitVector& v, const BipartiteView& view, MatchingReport& report) {
  const auto drops = detail::member_drops(v.ones(), residue(v), view);
  const std::size_t selected = select_neighbors(v, view).size();
  report.max_m_set = std::max(report.max_m_set, drops.size());
  report.max_selected = std::max(report.max_selected, selected);
  if (selected > view.d || selected != std::min(view.d, drops.size())) report.out_degree_ok = false;
  ++report.v2_checked;
}

}  // namespace detail

/// Checks |N(v)| <= d on V_2 and measures the fraction of V_1 with
/// |N(v')| >= d / (8 delta). Exhaustive mode enumerates both layers;
/// sampled mode draws `samples` uniform members of each.
inline MatchingReport verify_matching_lemma(const AdversarialConstruction& construction, std::size_t k,
                                            VerifyMode mode, std::uint64_t samples = 0) {
  const BipartiteView& view = construction.view(k);
  const AdversarialParams& params = construction.params();
  MatchingReport report;
  report.k = k;
  report.exhaustive = mode == VerifyMode::kExhaustive;
  const std::size_t m = view.m;

  if (mode == VerifyMode::kExhaustive) {
    if (binomial(m, k + 1) > BigCount(kMaxExhaustiveSets) || binomial(m, k) > BigCount(kMaxExhaustiveSets)) {
      throw CapacityError("exhaustive matching check too large at m=" + std::to_string(m) + ", k=" + std::to_string(k));
    }
    for_each_weight_k(m, k + 1, [&](const BitVector& v) { detail::check_v2_member(v, view, report); });
    for_each_weight_k(m, k, [&](const BitVector& s) {
      if (!view.in_top[residue(s)]) return;
      ++report.v1_checked;
      if (params.is_heavy(extension_neighborhood(s, view).size())) ++report.heavy;
    });
    return report;
  }

  if (samples == 0) throw InputError("sampled verification needs a positive sample count");
  SplitMixStream rng(KeyedMix(params.seed, MixTag::kSample).add(k).value());
  if (k + 1 <= m) {
    for (std::uint64_t i = 0; i < samples; ++i) detail::check_v2_member(detail::random_subset(m, k + 1, rng), view, report);
  }
  // Rejection sampling from V_1: uniform on S_k conditioned on a top residue.
  for (std::uint64_t i = 0; i < samples; ++i) {
    BitVector s = detail::random_subset(m, k, rng);
    while (!view.in_top[residue(s)]) s = detail::random_subset(m, k, rng);
    ++report.v1_checked;
    if (params.is_heavy(extension_neighborhood(s, view).size())) ++report.heavy;
  }
  return report;
}

/// Largest out-degree seen over the orientations of checked extensions.
struct ValidityReport {
  bool exhaustive = true;
  std::uint64_t extensions_checked = 0;
  std::size_t max_out_degree = 0;
  std::size_t max_zero_out_degree = 0;  ///< out-degree of f_0
  std::uint64_t violations = 0;         ///< extensions with max out-degree > d + 1
};

/// Orients every (k+1)-subset for k = 1..n (exhaustive) or `samples` random
/// ones (uniform k, then a uniform (k+1)-subset) and tracks out-degrees.
inline ValidityReport check_validity(const ProjectedClass& host, const AdversarialConstruction& construction,
                                     VerifyMode mode, std::uint64_t samples = 0) {
  const AdversarialParams& params = construction.params();
  if (host.domain_size() != params.m()) throw InputError("host domain size must be 2n");
  ValidityReport report;
  report.exhaustive = mode == VerifyMode::kExhaustive;
  auto check = [&](const BitVector& s_prime) {
    const BipartiteView& view = construction.view(s_prime.ones_count() - 1);
    const Orientation o = orient_extension(s_prime, host, view);
    const std::size_t out = o.max_out_degree();
    report.max_out_degree = std::max(report.max_out_degree, out);
    report.max_zero_out_degree =
        std::max(report.max_zero_out_degree, o.out_degree(BitVector(s_prime.ones_count())));
    if (out > params.d + 1) ++report.violations;
    ++report.extensions_checked;
  };
  const std::size_t m = params.m();
  const std::size_t top_k = std::min(params.n, m - 1);
  if (mode == VerifyMode::kExhaustive) {
    BigCount total = 0;
    for (std::size_t k = 1; k <= top_k; ++k) total += binomial(m, k + 1);
    if (total > BigCount(kMaxExhaustiveSets / 4)) throw CapacityError("exhaustive validity check too large");
    for (std::size_t k = 1; k <= top_k; ++k) for_each_weight_k(m, k + 1, check);
    return report;
  }
  if (samples == 0) throw InputError("sampled validity check needs a positive sample count");
  SplitMixStream rng(KeyedMix(params.seed, MixTag::kSample).add(0x56414c4944ULL).value());
  for (std::uint64_t i = 0; i < samples; ++i) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.below(top_k));
    check(detail::random_subset(m, k + 1, rng));
  }
  return report;
}

/// Reports for every k in 1..n.
inline std::vector<MatchingReport> verify_construction(const AdversarialConstruction& construction, VerifyMode mode,
                                                       std::uint64_t samples = 0) {
  std::vector<MatchingReport> out;
  for (std::size_t k = 1; k <= construction.params().n; ++k) {
    out.push_back(verify_matching_lemma(construction, k, mode, samples));
  }
  return out;
}

/// Heavy share of the pooled layer V_1 = union over k of V_1^k. Exhaustive
/// reports give the exact ratio; sampled ones are weighted by |V_1^k|.
inline double pooled_heavy_fraction(const AdversarialConstruction& construction,
                                    const std::vector<MatchingReport>& reports) {
  double num = 0;
  double den = 0;
  for (const auto& r : reports) {
    const double w = static_cast<double>(construction.view(r.k).v1_size);
    num += w * r.heavy_fraction();
    den += w;
  }
  return den == 0 ? 1.0 : num / den;
}

/// Seed acceptance: |N(v)| <= d everywhere and at least 3/4 of the pooled
/// V_1 is heavy (compared exactly for exhaustive reports).
inline bool construction_accepted(const AdversarialConstruction& construction,
                                  const std::vector<MatchingReport>& reports) {
  if (!std::all_of(reports.begin(), reports.end(), [](const MatchingReport& r) { return r.out_degree_ok; })) {
    return false;
  }
  if (std::all_of(reports.begin(), reports.end(), [](const MatchingReport& r) { return r.exhaustive; })) {
    std::uint64_t heavy = 0;
    std::uint64_t total = 0;
    for (const auto& r : reports) {
      heavy += r.heavy;
      total += r.v1_checked;
    }
    return 4 * heavy >= 3 * total;
  }
  return pooled_heavy_fraction(construction, reports) >= 0.75;
}

struct SeedSearchResult {
  std::optional<std::uint64_t> accepted_seed;
  std::size_t attempts = 0;
  double pooled_heavy_fraction = 0;
  std::vector<MatchingReport> reports;  ///< for the accepted seed, else the last attempt
};

/// Rejection over seeds first_seed, first_seed + 1, ... until the
/// construction passes the matching check.
inline SeedSearchResult find_accepted_seed(AdversarialParams params, std::size_t max_attempts, VerifyMode mode,
                                           std::uint64_t samples = 0) {
  SeedSearchResult result;
  const std::uint64_t first = params.seed;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    params.seed = first + attempt;
    const AdversarialConstruction construction(params);
    result.attempts = attempt + 1;
    result.reports = verify_construction(construction, mode, samples);
    result.pooled_heavy_fraction = pooled_heavy_fraction(construction, result.reports);
    if (construction_accepted(construction, result.reports)) {
      result.accepted_seed = params.seed;
      return result;
    }
  }
  return result;
}

}  // namespace oig
