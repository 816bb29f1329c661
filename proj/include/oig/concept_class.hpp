#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "oig/bit_vector.hpp"
#include "oig/combinatorics.hpp"
#include "oig/error.hpp"

namespace oig {

/// Soft limits for exhaustive VC-dimension search.
inline constexpr std::size_t kMaxVcDomain = 24;
inline constexpr std::size_t kMaxVcHypotheses = std::size_t{1} << 20;

/// A finite, non-empty set of hypotheses over the domain 1..domain_size().
/// Hypotheses are kept in ascending lexicographic order.
class ProjectedClass {
 public:
  /// Throws InputError on empty input, mixed lengths or duplicates.
  ProjectedClass(std::size_t domain_size, std::vector<BitVector> hypotheses)
      : domain_size_(domain_size), hypotheses_(std::move(hypotheses)) {
    validate();
    std::sort(hypotheses_.begin(), hypotheses_.end());
    if (std::adjacent_find(hypotheses_.begin(), hypotheses_.end()) != hypotheses_.end()) {
      throw InputError("duplicate hypothesis in class");
    }
  }

  /// As the constructor, but duplicates collapse silently.
  static ProjectedClass from_set(std::size_t domain_size, std::vector<BitVector> hypotheses) {
    std::sort(hypotheses.begin(), hypotheses.end());
    hypotheses.erase(std::unique(hypotheses.begin(), hypotheses.end()), hypotheses.end());
    return ProjectedClass(domain_size, std::move(hypotheses));
  }

  std::size_t domain_size() const noexcept { return domain_size_; }
  std::size_t size() const noexcept { return hypotheses_.size(); }
  const std::vector<BitVector>& hypotheses() const noexcept { return hypotheses_; }
  const BitVector& operator[](std::size_t i) const { return hypotheses_.at(i); }

  bool contains(const BitVector& h) const {
    return std::binary_search(hypotheses_.begin(), hypotheses_.end(), h);
  }

  /// Index of `h` in canonical order, or size() if absent.
  std::size_t index_of(const BitVector& h) const {
    auto it = std::lower_bound(hypotheses_.begin(), hypotheses_.end(), h);
    if (it == hypotheses_.end() || *it != h) return hypotheses_.size();
    return static_cast<std::size_t>(it - hypotheses_.begin());
  }

  friend bool operator==(const ProjectedClass&, const ProjectedClass&) = default;

 private:
  void validate() const {
    if (domain_size_ == 0) throw InputError("class domain size must be positive");
    if (hypotheses_.empty()) throw InputError("class must contain at least one hypothesis");
    for (const auto& h : hypotheses_) {
      if (h.size() != domain_size_) {
        throw InputError("hypothesis length " + std::to_string(h.size()) +
                         " does not match domain size " + std::to_string(domain_size_));
      }
    }
  }

  std::size_t domain_size_;
  std::vector<BitVector> hypotheses_;
};

/// Center f_0 with petals f_1..f_m, petal i differing from the center only at i.
struct StarSystem {
  BitVector center;
  std::vector<BitVector> petals;

  std::size_t domain_size() const noexcept { return center.size(); }

  /// All-zeros center with unit-vector petals.
  static StarSystem canonical(std::size_t m) {
    StarSystem s{BitVector(m), {}};
    s.petals.reserve(m);
    for (std::size_t i = 1; i <= m; ++i) s.petals.push_back(BitVector::unit(m, i));
    return s;
  }
};

/// Restrict every hypothesis to the positions where `subset` is 1.
inline ProjectedClass project(const ProjectedClass& cls, const BitVector& subset) {
  if (subset.size() != cls.domain_size()) {
    throw InputError("subset length " + std::to_string(subset.size()) + " does not match domain size " +
                     std::to_string(cls.domain_size()));
  }
  if (subset.none()) throw InputError("projection onto an empty subset");
  std::vector<BitVector> restricted;
  restricted.reserve(cls.size());
  for (const auto& h : cls.hypotheses()) restricted.push_back(h.restrict_to(subset));
  return ProjectedClass::from_set(subset.ones_count(), std::move(restricted));
}

namespace detail {

inline bool shatters(const ProjectedClass& cls, std::span<const std::size_t> points) {
  const std::size_t patterns = std::size_t{1} << points.size();
  std::vector<bool> seen(patterns, false);
  std::size_t distinct = 0;
  for (const auto& h : cls.hypotheses()) {
    std::size_t code = 0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (h.test(points[j])) code |= std::size_t{1} << j;
    }
    if (!seen[code]) {
      seen[code] = true;
      if (++distinct == patterns) return true;
    }
  }
  return false;
}

}  // namespace detail

/// Exact VC dimension by exhaustive shattering search.
///
/// Shattering is hereditary, so the search stops at the first size with no
/// shattered subset. Sizes beyond floor(log2 |class|) are never tried.
inline std::size_t vc_dimension(const ProjectedClass& cls) {
  if (cls.domain_size() > kMaxVcDomain || cls.size() > kMaxVcHypotheses) {
    throw CapacityError("vc_dimension limited to domain <= 24 and <= 2^20 hypotheses");
  }
  std::size_t max_size = 0;
  while ((std::size_t{1} << (max_size + 1)) <= cls.size()) ++max_size;
  max_size = std::min(max_size, cls.domain_size());

  std::size_t dim = 0;
  for (std::size_t t = 1; t <= max_size; ++t) {
    bool found = false;
    for_each_combination(cls.domain_size(), t, [&](std::span<const std::size_t> pts) {
      found = detail::shatters(cls, pts);
      return !found;
    });
    if (!found) break;
    dim = t;
  }
  return dim;
}

/// The zero function plus every single-point indicator on m points.
inline ProjectedClass build_indicator_class(std::size_t m) {
  if (m == 0) throw InputError("indicator class needs m >= 1");
  std::vector<BitVector> hyps;
  hyps.reserve(m + 1);
  hyps.emplace_back(m);
  for (std::size_t i = 1; i <= m; ++i) hyps.push_back(BitVector::unit(m, i));
  return ProjectedClass(m, std::move(hyps));
}

/// Every vector of length m with at most d ones.
inline ProjectedClass build_bounded_ones_class(std::size_t m, std::size_t d) {
  if (m == 0 || d == 0) throw InputError("bounded-ones class needs m >= 1 and d >= 1");
  if (d > m) throw InputError("bounded-ones class needs d <= m");
  BigCount total = 0;
  for (std::size_t i = 0; i <= d; ++i) total += binomial(m, i);
  if (total > BigCount(kMaxVcHypotheses)) throw CapacityError("bounded-ones class too large");
  std::vector<BitVector> hyps;
  for (std::size_t i = 0; i <= d; ++i) {
    for_each_weight_k(m, i, [&](const BitVector& v) { hyps.push_back(v); });
  }
  return ProjectedClass(m, std::move(hyps));
}

/// Whether `candidate` is a star system witnessed inside `cls`: center and
/// petals belong to the class, and petal i disagrees with the center exactly
/// on point i.
inline bool is_star_system(const ProjectedClass& cls, const StarSystem& candidate) {
  const std::size_t m = cls.domain_size();
  if (candidate.center.size() != m || candidate.petals.size() != m) {
    throw InputError("star system does not match class domain size");
  }
  if (!cls.contains(candidate.center)) return false;
  for (std::size_t i = 1; i <= m; ++i) {
    const BitVector& petal = candidate.petals[i - 1];
    if (petal.size() != m) throw InputError("petal length mismatch");
    if (!cls.contains(petal)) return false;
    const BitVector diff = petal ^ candidate.center;
    if (diff.ones_count() != 1 || !diff.test(i)) return false;
  }
  return true;
}

/// Reads the plain-text class format:
///
///     # comment
///     m h
///     <h lines of exactly m characters from {0,1}>
///
/// Blank lines and lines starting with '#' are skipped.
inline ProjectedClass parse_class(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t m = 0;
  std::size_t h = 0;
  bool have_header = false;
  std::vector<BitVector> hyps;
  std::vector<std::size_t> origin;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!have_header) {
      std::istringstream header(line);
      long long mm = 0;
      long long hh = 0;
      std::string rest;
      if (!(header >> mm >> hh) || (header >> rest) || mm <= 0 || hh <= 0) {
        throw ParseError(line_no, "expected header \"m h\" with positive integers");
      }
      m = static_cast<std::size_t>(mm);
      h = static_cast<std::size_t>(hh);
      have_header = true;
      continue;
    }
    if (hyps.size() == h) throw ParseError(line_no, "more than " + std::to_string(h) + " hypotheses");
    if (line.size() != m) {
      throw ParseError(line_no, "expected " + std::to_string(m) + " bits, got " + std::to_string(line.size()));
    }
    if (line.find_first_not_of("01") != std::string::npos) {
      throw ParseError(line_no, "hypothesis must contain only 0 and 1");
    }
    hyps.push_back(BitVector::from_string(line));
    origin.push_back(line_no);
  }
  if (!have_header) throw ParseError(line_no + 1, "missing header");
  if (hyps.size() != h) {
    throw ParseError(line_no + 1, "expected " + std::to_string(h) + " hypotheses, found " +
                                      std::to_string(hyps.size()));
  }
  std::vector<std::size_t> order(hyps.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return hyps[a] < hyps[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (hyps[order[i]] == hyps[order[i - 1]]) {
      throw ParseError(origin[order[i]],
                       "duplicate hypothesis (first seen on line " + std::to_string(origin[order[i - 1]]) + ")");
    }
  }
  return ProjectedClass(m, std::move(hyps));
}

inline ProjectedClass load_class_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open class file '" + path + "'");
  return parse_class(in);
}

}  // namespace oig
