#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "oig/adversarial.hpp"
#include "oig/bit_vector.hpp"
#include "oig/combinatorics.hpp"
#include "oig/concept_class.hpp"
#include "oig/error.hpp"
#include "oig/keyed_mix.hpp"
#include "oig/rational.hpp"
#include "oig/rules.hpp"

namespace oig {

enum class RuleKind { kClosure, kFlow, kRandomFlip, kAdversarial };

inline std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::kClosure: return "closure";
    case RuleKind::kFlow: return "flow";
    case RuleKind::kRandomFlip: return "random_flip";
    case RuleKind::kAdversarial: return "adversarial";
  }
  return "?";
}

inline RuleKind parse_rule_kind(std::string_view text) {
  if (text == "closure") return RuleKind::kClosure;
  if (text == "flow") return RuleKind::kFlow;
  if (text == "random_flip" || text == "random-flip") return RuleKind::kRandomFlip;
  if (text == "adversarial") return RuleKind::kAdversarial;
  throw ConfigError("unknown rule '" + std::string(text) + "'");
}

/// One PAC experiment: n uniform draws from a star of 2n points, target f_0.
struct ExperimentConfig {
  std::size_t n = 1;
  std::size_t d = 1;
  Rational delta{1, 10};
  RuleKind rule = RuleKind::kClosure;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<std::vector<Rational>> thresholds;  ///< unset: {d / (16 delta n)}
  unsigned jobs = 1;
  bool keep_records = true;
  bool keep_draws = false;
  std::size_t max_seed_attempts = 64;
  std::uint64_t verify_samples = 256;  ///< per weight, when exhaustive verification is too large

  std::size_t m() const noexcept { return 2 * n; }

  AdversarialParams adversarial_params() const { return AdversarialParams{n, d, delta, seed}; }

  std::vector<Rational> tail_thresholds() const {
    if (thresholds) return *thresholds;
    return {adversarial_params().error_floor()};
  }

  void validate() const {
    if (n == 0) throw ConfigError("n must be at least 1");
    if (d == 0) throw ConfigError("d must be at least 1");
    if (delta <= 0 || delta >= 1) throw ConfigError("delta must lie strictly between 0 and 1");
    if (trials == 0) throw ConfigError("trials must be at least 1");
    if (jobs == 0) throw ConfigError("jobs must be at least 1");
    for (const Rational& t : tail_thresholds()) {
      if (t <= 0 || t > 1) throw ConfigError("tail thresholds must lie in (0, 1]");
    }
  }
};

/// Host class for the experiment: the indicator class when d = 1, else all
/// vectors with at most d ones. Both contain the canonical star.
inline std::shared_ptr<const ProjectedClass> experiment_host(const ExperimentConfig& config) {
  if (config.d == 1) return std::make_shared<const ProjectedClass>(build_indicator_class(config.m()));
  return std::make_shared<const ProjectedClass>(build_bounded_ones_class(config.m(), config.d));
}

/// A rule ready for trials, with the seed search outcome for adversarial runs.
struct PreparedRule {
  AnyRule rule;
  std::optional<std::uint64_t> accepted_seed;
  std::size_t seed_attempts = 0;
  std::vector<MatchingReport> reports;
  std::vector<std::string> warnings;

  const AdversarialRule* adversarial() const { return std::get_if<AdversarialRule>(&rule); }
};

/// Exhaustive verification when every layer is small enough, else sampled.
inline VerifyMode preferred_verify_mode(std::size_t n) {
  for (std::size_t k = 1; k <= n; ++k) {
    if (binomial(2 * n, k + 1) > BigCount(kMaxExhaustiveSets / 8)) return VerifyMode::kSampled;
  }
  return VerifyMode::kExhaustive;
}

inline PreparedRule prepare_rule(const ExperimentConfig& config) {
  config.validate();
  auto host = experiment_host(config);
  switch (config.rule) {
    case RuleKind::kClosure: return PreparedRule{ClosureRule(host), std::nullopt, 0, {}, {}};
    case RuleKind::kFlow: return PreparedRule{FlowRule(host), std::nullopt, 0, {}, {}};
    case RuleKind::kRandomFlip: return PreparedRule{RandomFlipRule(host, config.seed), std::nullopt, 0, {}, {}};
    case RuleKind::kAdversarial: break;
  }
  AdversarialParams params = config.adversarial_params();
  params.validate();
  std::vector<std::string> warnings = params.warnings();
  const VerifyMode mode = preferred_verify_mode(config.n);
  SeedSearchResult search = find_accepted_seed(params, config.max_seed_attempts, mode, config.verify_samples);
  if (search.accepted_seed) {
    params.seed = *search.accepted_seed;
  } else {
    warnings.push_back("no seed in " + std::to_string(search.attempts) +
                       " attempts passed the matching check; using the configured seed");
  }
  return PreparedRule{AdversarialRule(host, params), search.accepted_seed, search.attempts, std::move(search.reports),
                      std::move(warnings)};
}

struct TrialRecord {
  std::uint64_t trial = 0;
  std::vector<std::uint32_t> draws;  ///< the training sample, with repeats
  std::size_t k = 0;                 ///< distinct points drawn
  std::size_t error_num = 0;         ///< disagreements with f_0
  std::size_t error_den = 0;         ///< domain size 2n
  std::optional<bool> in_w1;         ///< adversarial runs only

  Rational error() const {
    return Rational(static_cast<std::int64_t>(error_num), static_cast<std::int64_t>(error_den));
  }

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Trial `index`: draws n uniform points from a stream keyed by (seed, index),
/// trains on the distinct points with zero labels and measures the exact
/// error of the realized hypothesis.
inline TrialRecord run_trial(const ExperimentConfig& config, const PreparedRule& prepared, std::uint64_t index) {
  const std::size_t m = config.m();
  SplitMixStream rng(KeyedMix(config.seed, MixTag::kTrial).add(index).value());
  TrialRecord rec;
  rec.trial = index;
  rec.draws.reserve(config.n);
  BitVector train(m);
  for (std::size_t i = 0; i < config.n; ++i) {
    const auto x = static_cast<std::uint32_t>(1 + rng.below(m));
    rec.draws.push_back(x);
    train.set(x);
  }
  rec.k = train.ones_count();
  const BitVector labels(m);
  const BitVector h = realize_hypothesis(prepared.rule, train, labels);
  rec.error_num = hamming_distance(h, labels);
  rec.error_den = m;
  if (const AdversarialRule* adv = prepared.adversarial()) rec.in_w1 = adv->construction().is_in_w1(train);
  return rec;
}

/// Integer sufficient statistics of a set of trials; merging is associative
/// and commutative.
struct Accumulator {
  std::uint64_t trials = 0;
  std::uint64_t error_sum = 0;
  std::uint64_t error_sq_sum = 0;
  std::uint64_t in_w1 = 0;
  std::vector<std::uint64_t> histogram;  ///< by error numerator 0..2n

  explicit Accumulator(std::size_t m = 0) : histogram(m + 1, 0) {}

  void add(const TrialRecord& r) {
    ++trials;
    error_sum += r.error_num;
    error_sq_sum += static_cast<std::uint64_t>(r.error_num) * r.error_num;
    if (r.in_w1.value_or(false)) ++in_w1;
    ++histogram.at(r.error_num);
  }

  void merge(const Accumulator& o) {
    trials += o.trials;
    error_sum += o.error_sum;
    error_sq_sum += o.error_sq_sum;
    in_w1 += o.in_w1;
    for (std::size_t j = 0; j < histogram.size(); ++j) histogram[j] += o.histogram[j];
  }

  friend bool operator==(const Accumulator&, const Accumulator&) = default;
};

struct TailStat {
  Rational threshold;
  std::uint64_t count = 0;  ///< trials with error >= threshold
  double frequency = 0;
  double standard_error = 0;
};

struct Summary {
  ExperimentConfig config;
  Accumulator totals;
  double mean = 0;
  double standard_error = 0;
  std::vector<TailStat> tails;
  std::optional<double> pr_in_w1;
  std::optional<std::uint64_t> accepted_seed;
  std::size_t seed_attempts = 0;
  std::vector<std::string> warnings;
  std::vector<TrialRecord> records;

  /// Smallest error e with at least a q fraction of trials at or below e.
  Rational quantile(double q) const {
    const auto t = static_cast<double>(totals.trials);
    const auto need = static_cast<std::uint64_t>(std::ceil(q * t - 1e-9));
    std::uint64_t cum = 0;
    const std::size_t m = totals.histogram.size() - 1;
    for (std::size_t j = 0; j <= m; ++j) {
      cum += totals.histogram[j];
      if (cum >= std::max<std::uint64_t>(need, 1)) {
        return Rational(static_cast<std::int64_t>(j), static_cast<std::int64_t>(m));
      }
    }
    return Rational(1);
  }

  Rational exact_mean() const {
    const auto m = static_cast<std::int64_t>(totals.histogram.size() - 1);
    return Rational(static_cast<std::int64_t>(totals.error_sum), static_cast<std::int64_t>(totals.trials) * m);
  }
};

/// Mean, standard error, tails and W_1 frequency from integer totals.
inline Summary summarize(const ExperimentConfig& config, Accumulator totals) {
  Summary s;
  s.config = config;
  const auto t = static_cast<double>(totals.trials);
  const auto m = static_cast<double>(config.m());
  s.mean = static_cast<double>(totals.error_sum) / (t * m);
  if (totals.trials > 1) {
    const double mean_num = static_cast<double>(totals.error_sum) / t;
    const double var_num =
        (static_cast<double>(totals.error_sq_sum) - t * mean_num * mean_num) / (t - 1.0);
    s.standard_error = std::sqrt(std::max(0.0, var_num) / t) / m;
  }
  for (const Rational& thr : config.tail_thresholds()) {
    TailStat tail;
    tail.threshold = thr;
    for (std::size_t j = 0; j < totals.histogram.size(); ++j) {
      // j / 2n >= thr, cross-multiplied.
      if (static_cast<std::int64_t>(j) * thr.denominator() >=
          thr.numerator() * static_cast<std::int64_t>(config.m())) {
        tail.count += totals.histogram[j];
      }
    }
    tail.frequency = static_cast<double>(tail.count) / t;
    tail.standard_error = std::sqrt(tail.frequency * (1.0 - tail.frequency) / t);
    s.tails.push_back(tail);
  }
  std::sort(s.tails.begin(), s.tails.end(),
            [](const TailStat& a, const TailStat& b) { return a.threshold < b.threshold; });
  if (config.rule == RuleKind::kAdversarial) s.pr_in_w1 = static_cast<double>(totals.in_w1) / t;
  s.totals = std::move(totals);
  return s;
}

/// Runs every trial (split across `jobs` workers by index) and summarizes.
inline Summary monte_carlo(const ExperimentConfig& config, const PreparedRule& prepared) {
  config.validate();
  const unsigned jobs = static_cast<unsigned>(std::min<std::uint64_t>(config.jobs, config.trials));
  std::vector<Accumulator> partial(jobs, Accumulator(config.m()));
  std::vector<TrialRecord> records(config.keep_records ? config.trials : 0);

  auto worker = [&](unsigned w) {
    for (std::uint64_t i = w; i < config.trials; i += jobs) {
      TrialRecord rec = run_trial(config, prepared, i);
      partial[w].add(rec);
      if (config.keep_records) {
        if (!config.keep_draws) rec.draws.clear();
        records[i] = std::move(rec);
      }
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
  }

  Accumulator totals(config.m());
  for (const auto& p : partial) totals.merge(p);
  Summary s = summarize(config, std::move(totals));
  s.accepted_seed = prepared.accepted_seed;
  s.seed_attempts = prepared.seed_attempts;
  s.warnings = prepared.warnings;
  s.records = std::move(records);
  return s;
}

inline Summary monte_carlo(const ExperimentConfig& config) { return monte_carlo(config, prepare_rule(config)); }

inline constexpr std::size_t kMaxExactN = 6;

/// Exact law of the error over all samples of size n.
struct ExactDistribution {
  std::size_t n = 0;
  std::uint64_t denominator = 0;                 ///< (2n)^n equally likely samples
  std::map<std::size_t, std::uint64_t> error_law;  ///< error numerator -> number of samples
  std::vector<std::uint64_t> size_law;           ///< |S| = k -> number of samples, k = 0..n
  std::uint64_t in_w1 = 0;                       ///< samples whose set is in W_1

  Rational probability(std::uint64_t count) const {
    return Rational(static_cast<std::int64_t>(count), static_cast<std::int64_t>(denominator));
  }

  Rational mean() const {
    std::int64_t num = 0;
    for (const auto& [j, c] : error_law) num += static_cast<std::int64_t>(j * c);
    return Rational(num, static_cast<std::int64_t>(denominator) * static_cast<std::int64_t>(2 * n));
  }

  Rational pr_in_w1() const { return probability(in_w1); }

  /// Pr[error >= t].
  Rational tail(const Rational& t) const {
    std::uint64_t c = 0;
    for (const auto& [j, cnt] : error_law) {
      if (static_cast<std::int64_t>(j) * t.denominator() >= t.numerator() * static_cast<std::int64_t>(2 * n)) c += cnt;
    }
    return probability(c);
  }
};

/// Number of length-n sequences over a fixed k-set that use every element,
/// by inclusion-exclusion: sum_j (-1)^j C(k,j) (k-j)^n.
inline std::uint64_t onto_count(std::size_t n, std::size_t k) {
  std::int64_t total = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    std::int64_t term = static_cast<std::int64_t>(binomial_u64(k, j));
    for (std::size_t i = 0; i < n; ++i) term *= static_cast<std::int64_t>(k - j);
    total += (j % 2 == 0) ? term : -term;
  }
  return static_cast<std::uint64_t>(total);
}

/// Enumerates every possible training set, weighting each by the number of
/// samples that produce it. Requires n <= 6.
inline ExactDistribution exact_distribution(const ExperimentConfig& config, const PreparedRule& prepared) {
  if (config.n > kMaxExactN) {
    throw CapacityError("exact distribution limited to n <= " + std::to_string(kMaxExactN));
  }
  const std::size_t n = config.n;
  const std::size_t m = config.m();
  ExactDistribution dist;
  dist.n = n;
  dist.denominator = 1;
  for (std::size_t i = 0; i < n; ++i) dist.denominator *= m;
  dist.size_law.assign(n + 1, 0);
  const BitVector labels(m);
  const AdversarialRule* adv = prepared.adversarial();
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::uint64_t weight = onto_count(n, k);
    for_each_weight_k(m, k, [&](const BitVector& s) {
      const BitVector h = realize_hypothesis(prepared.rule, s, labels);
      dist.error_law[hamming_distance(h, labels)] += weight;
      dist.size_law[k] += weight;
      if (adv && adv->construction().is_in_w1(s)) dist.in_w1 += weight;
      total += weight;
    });
  }
  if (total != dist.denominator) throw InvariantViolation("exact sample weights do not sum to (2n)^n");
  return dist;
}

inline ExactDistribution exact_distribution(const ExperimentConfig& config) {
  return exact_distribution(config, prepare_rule(config));
}

// ---- output ----

inline nlohmann::ordered_json config_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["n"] = c.n;
  j["m"] = c.m();
  j["d"] = c.d;
  j["delta"] = to_string(c.delta);
  j["rule"] = std::string(to_string(c.rule));
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  return j;
}

inline nlohmann::ordered_json summary_json(const Summary& s) {
  nlohmann::ordered_json j;
  j["config"] = config_json(s.config);
  j["trials"] = s.totals.trials;
  j["mean_error"] = s.mean;
  j["mean_error_exact"] = to_string(s.exact_mean());
  j["standard_error"] = s.standard_error;
  if (!s.tails.empty()) {
    auto tails = nlohmann::ordered_json::array();
    for (const auto& t : s.tails) {
      nlohmann::ordered_json row;
      row["threshold"] = to_string(t.threshold);
      row["count"] = t.count;
      row["frequency"] = t.frequency;
      row["standard_error"] = t.standard_error;
      tails.push_back(row);
    }
    j["tails"] = tails;
  }
  if (s.pr_in_w1) j["pr_in_w1"] = *s.pr_in_w1;
  if (s.config.rule == RuleKind::kAdversarial) {
    j["accepted_seed"] = s.accepted_seed ? nlohmann::ordered_json(*s.accepted_seed) : nlohmann::ordered_json(nullptr);
    j["seed_attempts"] = s.seed_attempts;
  }
  j["error_histogram"] = s.totals.histogram;
  if (!s.warnings.empty()) j["warnings"] = s.warnings;
  return j;
}

inline void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial,k,error_num,error_den,in_w1\n";
  for (const auto& r : records) {
    out << r.trial << ',' << r.k << ',' << r.error_num << ',' << r.error_den << ',';
    if (r.in_w1) out << (*r.in_w1 ? 1 : 0);
    out << '\n';
  }
}

enum class OutputFormat { kCsv, kJson };

/// Writes the summary to `path` (json), or the per-trial table to `path` and
/// the summary to `path` + ".summary.json" (csv).
inline std::vector<std::filesystem::path> emit(const Summary& summary, const std::filesystem::path& path,
                                               OutputFormat format) {
  auto open = [](const std::filesystem::path& p) {
    if (p.has_parent_path()) {
      std::error_code ec;
      std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + p.string() + "' for writing");
    return out;
  };
  auto finish = [](std::ofstream& out, const std::filesystem::path& p) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + p.string() + "'");
  };
  std::vector<std::filesystem::path> written;
  std::filesystem::path summary_path = path;
  if (format == OutputFormat::kCsv) {
    auto out = open(path);
    write_trials_csv(out, summary.records);
    finish(out, path);
    written.push_back(path);
    summary_path += ".summary.json";
  }
  auto out = open(summary_path);
  out << summary_json(summary).dump(2) << '\n';
  finish(out, summary_path);
  written.push_back(summary_path);
  return written;
}

}  // namespace oig
