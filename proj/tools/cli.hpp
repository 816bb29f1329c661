#pragma once

// Command-line front end: vt, orient, verify, simulate, exact.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oig/oig.hpp"

namespace oiglab {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kCapacity = 3 };

struct ExperimentFlags {
  std::size_t n = 0;
  std::size_t d = 1;
  std::string delta = "0.1";
  std::string rule = "adversarial";
  std::uint64_t seed = 0;
};

inline oig::ExperimentConfig to_config(const ExperimentFlags& f) {
  oig::ExperimentConfig c;
  c.n = f.n;
  c.d = f.d;
  c.delta = oig::parse_rational(f.delta);
  c.rule = oig::parse_rule_kind(f.rule);
  c.seed = f.seed;
  return c;
}

inline json params_json(const oig::AdversarialParams& p) {
  json j;
  j["n"] = p.n;
  j["m"] = p.m();
  j["d"] = p.d;
  j["delta"] = oig::to_string(p.delta);
  j["seed"] = p.seed;
  j["residue_budget"] = p.effective_budget();
  return j;
}

inline json report_json(const oig::MatchingReport& r) {
  json j;
  j["k"] = r.k;
  j["out_degree_ok"] = r.out_degree_ok;
  j["max_selected"] = r.max_selected;
  j["max_m_set"] = r.max_m_set;
  j["v1_checked"] = r.v1_checked;
  j["heavy"] = r.heavy;
  j["heavy_fraction"] = r.heavy_fraction();
  return j;
}

inline oig::VerifyMode parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return oig::VerifyMode::kExhaustive;
  if (mode == "sampled") return oig::VerifyMode::kSampled;
  throw oig::ConfigError("unknown mode '" + mode + "'");
}

inline std::filesystem::path default_output(const oig::ExperimentConfig& c, const std::string& ext) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("OIGLAB_OUT_DIR"); env && *env) dir = env;
  return dir / ("simulate-n" + std::to_string(c.n) + "-" + std::string(oig::to_string(c.rule)) + "-s" +
                std::to_string(c.seed) + "." + ext);
}

inline json exact_json(const oig::ExperimentConfig& c, const oig::PreparedRule& prepared,
                       const oig::ExactDistribution& dist) {
  json j;
  j["config"] = oig::config_json(c);
  j["denominator"] = dist.denominator;
  json law = json::array();
  for (const auto& [num, count] : dist.error_law) {
    json row;
    row["error"] = oig::to_string(oig::Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(2 * c.n)));
    row["probability"] = oig::to_string(dist.probability(count));
    law.push_back(row);
  }
  j["error_law"] = law;
  json sizes = json::array();
  for (std::size_t k = 1; k < dist.size_law.size(); ++k) sizes.push_back(oig::to_string(dist.probability(dist.size_law[k])));
  j["size_law"] = sizes;
  j["mean_error"] = oig::to_string(dist.mean());
  j["mean_error_value"] = oig::to_double(dist.mean());
  if (prepared.adversarial()) {
    j["pr_in_w1"] = oig::to_string(dist.pr_in_w1());
    j["pr_in_w1_value"] = oig::to_double(dist.pr_in_w1());
    j["accepted_seed"] = prepared.accepted_seed ? json(*prepared.accepted_seed) : json(nullptr);
  }
  return j;
}

/// Runs the tool; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"oiglab: one-inclusion graph orientation laboratory"};
  app.require_subcommand(1);
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "Print warnings and progress to stderr");

  // vt
  auto* vt = app.add_subcommand("vt", "Varshamov-Tenengolts code utilities");
  vt->require_subcommand(1);
  std::string vt_bits;
  auto* vt_residue = vt->add_subcommand("residue", "Residue sum_i i*v(i) mod (m+1) of a bit string");
  vt_residue->add_option("bits", vt_bits, "Bit string, position 1 leftmost")->required();
  std::size_t vt_m = 0;
  std::size_t vt_k = 0;
  auto* vt_counts = vt->add_subcommand("counts", "CSV of |VT_a(m) with k ones| for a = 0..m");
  vt_counts->add_option("--m", vt_m, "Length")->required();
  vt_counts->add_option("--k", vt_k, "Number of ones")->required();
  auto* vt_unique = vt->add_subcommand("check-unique", "Exhaustive unique-neighborhood check");
  vt_unique->add_option("--m", vt_m, "Length")->required();

  // orient
  auto* orient = app.add_subcommand("orient", "Orient the one-inclusion graph of a class file");
  std::string class_file;
  std::string subset_bits;
  std::string orient_mode = "flow";
  orient->add_option("--class", class_file, "Class file")->required();
  orient->add_option("--subset", subset_bits, "Project onto this subset first");
  orient->add_option("--mode", orient_mode, "flow or closure")->check(CLI::IsMember({"flow", "closure"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Check the construction's combinatorial guarantees");
  verify->require_subcommand(1);
  ExperimentFlags vflags;
  std::string verify_mode = "exhaustive";
  std::uint64_t samples = 0;
  std::size_t max_attempts = 64;
  auto* v_matching = verify->add_subcommand("matching", "Seed rejection until the matching check passes");
  auto* v_validity = verify->add_subcommand("validity", "Max out-degree of the adversarial orientations");
  for (auto* sub : {v_matching, v_validity}) {
    sub->add_option("--n", vflags.n, "Sample size")->required();
    sub->add_option("--d", vflags.d, "Out-degree budget");
    sub->add_option("--delta", vflags.delta, "Confidence parameter");
    sub->add_option("--seed", vflags.seed, "Construction seed (first attempt)");
  }
  v_matching->add_option("--mode", verify_mode, "exhaustive or sampled");
  v_matching->add_option("--samples", samples, "Samples per k in sampled mode");
  v_matching->add_option("--max-attempts", max_attempts, "Seeds to try");
  v_validity->add_option("--samples", samples, "Sampled extensions (0: exhaustive)");
  std::size_t unique_m = 0;
  auto* v_unique = verify->add_subcommand("unique", "Exhaustive unique-neighborhood check");
  v_unique->add_option("--m", unique_m, "Length")->required();

  // simulate / exact
  ExperimentFlags sflags;
  std::uint64_t trials = 0;
  std::string out_path;
  std::string format = "csv";
  unsigned jobs = 1;
  std::vector<std::string> thresholds;
  bool no_tails = false;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo PAC experiment on the 2n-point star");
  simulate->add_option("--n", sflags.n, "Sample size")->required();
  simulate->add_option("--d", sflags.d, "Out-degree budget");
  simulate->add_option("--delta", sflags.delta, "Confidence parameter");
  simulate->add_option("--rule", sflags.rule, "closure, flow, random_flip or adversarial");
  simulate->add_option("--trials", trials, "Number of trials")->required();
  simulate->add_option("--seed", sflags.seed, "Experiment seed");
  simulate->add_option("--out", out_path, "Output path (default under $OIGLAB_OUT_DIR)");
  simulate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--jobs", jobs, "Worker threads");
  simulate->add_option("--threshold", thresholds, "Tail thresholds (e.g. 1/80); default d/(16 delta n)");
  simulate->add_flag("--no-tails", no_tails, "Omit tail statistics");

  ExperimentFlags eflags;
  auto* exact = app.add_subcommand("exact", "Exact error law by enumeration (n <= 6)");
  exact->add_option("--n", eflags.n, "Sample size")->required();
  exact->add_option("--d", eflags.d, "Out-degree budget");
  exact->add_option("--delta", eflags.delta, "Confidence parameter");
  exact->add_option("--rule", eflags.rule, "closure, flow, random_flip or adversarial");
  exact->add_option("--seed", eflags.seed, "Construction seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  auto warn = [&](const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) err << "warning: " << w << '\n';
  };

  try {
    if (vt_residue->parsed()) {
      out << oig::residue(oig::BitVector::from_string(vt_bits)) << '\n';
    } else if (vt_counts->parsed()) {
      const auto profile = oig::count_by_residue(vt_m, vt_k);
      out << "a,count\n";
      for (std::size_t a = 0; a < profile.counts.size(); ++a) out << a << ',' << profile.counts[a] << '\n';
    } else if (vt_unique->parsed() || v_unique->parsed()) {
      const std::size_t m = vt_unique->parsed() ? vt_m : unique_m;
      const auto r = oig::check_unique_neighborhoods(m);
      json j;
      j["check"] = "unique";
      j["params"] = json{{"m", m}};
      j["result"] = json{{"pass", r.passed()},
                         {"vectors_checked", r.vectors_checked},
                         {"max_covered", r.max_covered},
                         {"partition_ok", r.partition_ok}};
      j["accepted_seed"] = nullptr;
      out << j.dump() << '\n';
      return r.passed() ? kOk : kFailure;
    } else if (orient->parsed()) {
      oig::ProjectedClass cls = oig::load_class_file(class_file);
      if (!subset_bits.empty()) cls = oig::project(cls, oig::BitVector::from_string(subset_bits));
      auto g = oig::build_graph(cls);
      const oig::Orientation o = orient_mode == "closure"
                                     ? oig::closure_orientation(g, oig::BitVector(cls.domain_size()))
                                     : oig::orient_min_max_outdegree(g);
      for (std::size_t e = 0; e < g->edge_count(); ++e) {
        const oig::Edge& ed = g->edge(e);
        out << "edge(" << g->vertex(ed.u).to_string() << ',' << g->vertex(ed.v).to_string() << ',' << ed.coord
            << ") -> " << g->vertex(o.head(e)).to_string() << '\n';
      }
      out << "max_out_degree " << o.max_out_degree() << '\n';
    } else if (v_matching->parsed()) {
      oig::AdversarialParams p{vflags.n, vflags.d, oig::parse_rational(vflags.delta), vflags.seed};
      p.validate();
      if (verbosity > 0) warn(p.warnings());
      const oig::VerifyMode mode = parse_mode(verify_mode);
      if (mode == oig::VerifyMode::kSampled && samples == 0) samples = 1000;
      const auto search = oig::find_accepted_seed(p, max_attempts, mode, samples);
      json result;
      result["accepted"] = search.accepted_seed.has_value();
      result["attempts"] = search.attempts;
      result["heavy_fraction"] = search.pooled_heavy_fraction;
      result["mode"] = verify_mode;
      json per_k = json::array();
      for (const auto& r : search.reports) per_k.push_back(report_json(r));
      result["per_k"] = per_k;
      json j;
      j["check"] = "matching";
      j["params"] = params_json(p);
      j["result"] = result;
      j["accepted_seed"] = search.accepted_seed ? json(*search.accepted_seed) : json(nullptr);
      out << j.dump() << '\n';
      return search.accepted_seed ? kOk : kFailure;
    } else if (v_validity->parsed()) {
      oig::AdversarialParams p{vflags.n, vflags.d, oig::parse_rational(vflags.delta), vflags.seed};
      p.validate();
      if (verbosity > 0) warn(p.warnings());
      oig::ExperimentConfig c;
      c.n = p.n;
      c.d = p.d;
      const auto host = oig::experiment_host(c);
      const oig::AdversarialConstruction construction(p);
      const auto mode = samples == 0 ? oig::VerifyMode::kExhaustive : oig::VerifyMode::kSampled;
      const auto r = oig::check_validity(*host, construction, mode, samples);
      json j;
      j["check"] = "validity";
      j["params"] = params_json(p);
      j["result"] = json{{"pass", r.violations == 0},
                         {"mode", r.exhaustive ? "exhaustive" : "sampled"},
                         {"extensions_checked", r.extensions_checked},
                         {"max_out_degree", r.max_out_degree},
                         {"max_zero_out_degree", r.max_zero_out_degree},
                         {"bound", p.d + 1},
                         {"violations", r.violations}};
      j["accepted_seed"] = nullptr;
      out << j.dump() << '\n';
      return r.violations == 0 ? kOk : kFailure;
    } else if (simulate->parsed()) {
      oig::ExperimentConfig c = to_config(sflags);
      c.trials = trials;
      c.jobs = jobs;
      if (no_tails) {
        c.thresholds = std::vector<oig::Rational>{};
      } else if (!thresholds.empty()) {
        std::vector<oig::Rational> ts;
        for (const auto& t : thresholds) ts.push_back(oig::parse_rational(t));
        c.thresholds = ts;
      }
      const auto prepared = oig::prepare_rule(c);
      if (verbosity > 0) warn(prepared.warnings);
      const oig::Summary summary = oig::monte_carlo(c, prepared);
      const auto fmt = format == "json" ? oig::OutputFormat::kJson : oig::OutputFormat::kCsv;
      const std::filesystem::path path = out_path.empty() ? default_output(c, format) : std::filesystem::path(out_path);
      for (const auto& written : oig::emit(summary, path, fmt)) out << "wrote " << written.string() << '\n';
      out << oig::summary_json(summary).dump() << '\n';
    } else if (exact->parsed()) {
      oig::ExperimentConfig c = to_config(eflags);
      if (c.n > oig::kMaxExactN) throw oig::CapacityError("exact distribution limited to n <= 6");
      const auto prepared = oig::prepare_rule(c);
      if (verbosity > 0) warn(prepared.warnings);
      const auto dist = oig::exact_distribution(c, prepared);
      out << exact_json(c, prepared, dist).dump() << '\n';
    }
  } catch (const oig::CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const oig::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace oiglab
