#include "ndsent/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "ndsent/covers.hpp"
#include "ndsent/entropy_measure.hpp"
#include "ndsent/entropy_topological.hpp"
#include "ndsent/errors.hpp"
#include "ndsent/information.hpp"
#include "ndsent/misiurewicz.hpp"
#include "ndsent/serialize.hpp"
#include "ndsent/spanning.hpp"

namespace nds {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

const char* const kKinds[] = {
    "meas-entropy", "topo-spanning", "topo-cover", "lipschitz-bound",
    "rokhlin",      "certify",       "power-rule", "weak-star",
    "emax-demo",    "circle-formulas"};

[[noreturn]] void fail(const std::string& ctx, const std::string& what) {
  throw ConfigError(ctx + ": " + what);
}

void expect_fields(const json& j, const std::string& ctx,
                   std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(ctx, "expected a JSON object");
  for (const char* key : required) {
    if (!j.contains(key)) fail(ctx, std::string("missing field \"") + key + "\"");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : required) known = known || item.key() == key;
    for (const char* key : optional) known = known || item.key() == key;
    if (!known) fail(ctx, "unknown field \"" + item.key() + "\"");
  }
}

std::string read_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) fail(ctx, "expected a string");
  return j.get<std::string>();
}

long long read_int64(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) fail(ctx, "expected an integer");
  return j.get<long long>();
}

Rational read_rational(const json& j, const std::string& ctx) {
  if (!j.is_string()) fail(ctx, "expected a rational as a \"p/q\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(ctx, e.what());
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot read file: " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path resolve(const fs::path& base_dir, const std::string& rel) {
  fs::path p(rel);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p;
}

// True when the node is a {"path": ...} reference rather than an inline object.
bool is_path_ref(const json& j) {
  return j.is_object() && j.size() == 1 && j.contains("path");
}

std::string fetch_text(const json& j, const std::string& ctx,
                       const fs::path& base_dir) {
  if (is_path_ref(j)) {
    return read_file(resolve(base_dir, read_string(j.at("path"), ctx + ".path")));
  }
  return j.dump();
}

// ---------------------------------------------------------------------------
// Result assembly helpers

std::string fmt_ll(long long v) { return std::to_string(v); }

double count_slope(long long c1, long long n1, long long c2, long long n2) {
  if (n2 == n1) return 0.0;
  return (std::log2(static_cast<double>(c2)) -
          std::log2(static_cast<double>(c1))) /
         static_cast<double>(n2 - n1);
}

std::vector<long long> horizons_or(const ExperimentConfig& cfg,
                                   std::vector<long long> fallback) {
  return cfg.horizons.empty() ? std::move(fallback) : cfg.horizons;
}

// Growth-slope kinds need two measurement points: a single requested horizon
// h >= 2 is silently widened to {h/2, h}.
std::vector<long long> slope_horizons(std::vector<long long> hz) {
  if (hz.size() == 1 && hz.front() >= 2) {
    return {std::max<long long>(1, hz.front() / 2), hz.front()};
  }
  return hz;
}

std::pair<std::string, const PartitionSequence*> pick_partitions(
    const ExperimentConfig& cfg) {
  if (cfg.partitions_override) return {"(config)", &*cfg.partitions_override};
  if (cfg.partitions.empty()) {
    throw UsageError(
        "this computation needs a partition sequence: the system declares "
        "none and the config supplies none");
  }
  if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) > cfg.partitions.size()) {
    throw UsageError("k = " + std::to_string(cfg.k) +
                     " is outside 1.." + std::to_string(cfg.partitions.size()));
  }
  const auto& chosen = cfg.partitions[static_cast<std::size_t>(cfg.k - 1)];
  return {chosen.first, &chosen.second};
}

// Uniform open cover by `cells` overlapping slabs (j/cells - delta,
// (j+1)/cells + delta).  The overlap must stay below half a slab.
CoverSequence near_uniform_cover(long long cells, const Rational& delta) {
  const Rational width(1, cells);
  if (!(Rational(0) < delta) || !(delta + delta < width)) {
    throw UsageError("cover overlap delta must lie in (0, 1/(2*" +
                     std::to_string(cells) + ")), got " + delta.str());
  }
  std::vector<Interval> elements;
  elements.reserve(static_cast<std::size_t>(cells));
  for (long long j = 0; j < cells; ++j) {
    elements.push_back(Interval::open(Rational(j, cells) - delta,
                                      Rational(j + 1, cells) + delta));
  }
  return CoverSequence::constant(OpenCover(std::move(elements)));
}

CoverSequence near_half_cover(const Rational& delta) {
  return near_uniform_cover(2, delta);
}

// ---------------------------------------------------------------------------
// Per-kind runners

ExperimentResult run_meas_entropy(const ExperimentConfig& cfg, Budget& budget) {
  ExperimentResult r;
  auto [pname, ps] = pick_partitions(cfg);
  auto hz = horizons_or(cfg, {1, 2, 4, 8, 16});
  EntropyTrace trace = partition_entropy_trace(*cfg.system, cfg.mu0, *ps, hz,
                                               budget, cfg.system_label, pname);
  r.columns = {"n", "value_bits", "cells", "budget_used"};
  for (const auto& row : trace.rows) {
    r.rows.push_back({fmt_ll(row.n), format_g12(row.value_bits),
                      fmt_ll(static_cast<long long>(row.cells)),
                      fmt_ll(row.budget_used)});
  }
  r.value_bits = trace.rows.back().value_bits;
  r.value_desc = "entropy quotient at the final horizon (bits)";
  r.facts.emplace_back("partitions", pname);
  r.facts.emplace_back("running_max_bits", format_g12(trace.running_max()));
  return r;
}

ExperimentResult run_topo_spanning(const ExperimentConfig& cfg, Budget& budget,
                                   int workers) {
  ExperimentResult r;
  std::vector<Rational> eps =
      cfg.eps.empty() ? std::vector<Rational>{Rational(1, 10)} : cfg.eps;
  auto hz = slope_horizons(horizons_or(cfg, {4, 8}));
  std::vector<SpanningReport> head_reports;
  for (std::size_t e = 0; e < eps.size(); ++e) {
    for (long long n : hz) {
      SpanningReport rep = spanning_bounds(*cfg.system, n, eps[e],
                                           cfg.grid_step, budget, workers,
                                           cfg.system_label);
      r.rows.push_back({fmt_ll(n), eps[e].str(), format_g12(rep.lower_bits()),
                        format_g12(rep.upper_bits()), cfg.grid_step.str()});
      if (e == 0) head_reports.push_back(rep);
    }
  }
  r.columns = {"n", "eps", "lower_bits", "upper_bits", "grid_step"};
  if (head_reports.size() >= 2) {
    const auto& a = head_reports.front();
    const auto& b = head_reports.back();
    r.value_bits = count_slope(a.separated_lower, a.n, b.separated_lower, b.n);
    r.value_desc =
        "separated-count growth slope between the first and last horizon "
        "(bits per step)";
  } else {
    r.value_bits = head_reports.front().lower_bits();
    r.value_desc = "certified separated-count quotient (bits)";
  }
  r.facts.emplace_back("headline_eps", eps.front().str());
  for (const auto& rep : head_reports) {
    r.facts.emplace_back("separated_lower@n=" + fmt_ll(rep.n),
                         fmt_ll(rep.separated_lower));
    r.facts.emplace_back("spanning_upper@n=" + fmt_ll(rep.n),
                         fmt_ll(rep.spanning_upper));
    r.facts.emplace_back("certified@n=" + fmt_ll(rep.n),
                         rep.certified ? "true" : "false");
  }
  return r;
}

ExperimentResult run_topo_cover(const ExperimentConfig& cfg, Budget& budget) {
  ExperimentResult r;
  const Rational delta = cfg.eps.empty() ? Rational(1, 100) : cfg.eps.front();
  CoverSequence covers = near_half_cover(delta);
  auto hz = slope_horizons(horizons_or(cfg, {2, 6}));
  std::vector<CoverCountReport> reports;
  for (long long n : hz) {
    reports.push_back(cover_refinement_count(*cfg.system, covers, n, budget));
  }
  r.columns = {"n",       "delta",  "refined_elements", "minimal",
               "greedy_upper", "lower_bound", "proven", "bits"};
  for (const auto& rep : reports) {
    r.rows.push_back({fmt_ll(rep.n), delta.str(),
                      fmt_ll(static_cast<long long>(rep.refined_elements)),
                      fmt_ll(rep.minimal), fmt_ll(rep.greedy_upper),
                      fmt_ll(rep.lower_bound), rep.proven ? "1" : "0",
                      format_g12(rep.bits())});
  }
  if (reports.size() >= 2) {
    const auto& a = reports.front();
    const auto& b = reports.back();
    r.value_bits = count_slope(a.minimal, a.n, b.minimal, b.n);
    r.value_desc =
        "minimal-subcover growth slope between the first and last horizon "
        "(bits per step)";
  } else {
    r.value_bits = reports.front().bits();
    r.value_desc = "minimal-subcover quotient (bits)";
  }
  bool all_proven = true;
  for (const auto& rep : reports) all_proven = all_proven && rep.proven;
  r.facts.emplace_back("delta", delta.str());
  r.facts.emplace_back("all_counts_proven_minimal", all_proven ? "true" : "false");
  return r;
}

ExperimentResult run_lipschitz(const ExperimentConfig& cfg) {
  ExperimentResult r;
  auto hz = horizons_or(cfg, {512});
  const long long horizon = hz.back();
  LipschitzTrace trace = lipschitz_upper_bound(*cfg.system, horizon);
  if (trace.rows.empty()) throw UsageError("horizon must be at least 1");
  r.columns = {"n", "value_bits", "running_sup"};
  for (const auto& row : trace.rows) {
    r.rows.push_back({fmt_ll(row.n), format_g12(row.value_bits),
                      format_g12(row.running_sup)});
  }
  r.value_bits = trace.rows.back().value_bits;
  r.value_desc = "expansion upper bound at the final horizon (bits)";
  r.facts.emplace_back("horizon", fmt_ll(horizon));
  r.facts.emplace_back("running_sup_bits",
                       format_g12(trace.rows.back().running_sup));
  return r;
}

ExperimentResult run_rokhlin(const ExperimentConfig& cfg, Budget& budget) {
  ExperimentResult r;
  auto [pname, p] = pick_partitions(cfg);
  std::string qname;
  const PartitionSequence* q = nullptr;
  if (cfg.partitions_b) {
    qname = "(config)";
    q = &*cfg.partitions_b;
  } else if (static_cast<std::size_t>(cfg.k) < cfg.partitions.size()) {
    const auto& next = cfg.partitions[static_cast<std::size_t>(cfg.k)];
    qname = next.first;
    q = &next.second;
  } else {
    throw UsageError(
        "rokhlin compares two partition sequences: give partitions_b or pick "
        "a system declaring at least k+1 of them");
  }
  auto hz = horizons_or(cfg, {8});
  const long long horizon = hz.back();
  MeasureSequence mus(cfg.system, cfg.mu0);
  const double dist = rokhlin_distance_bits(*p, *q, mus, horizon, budget);
  EntropyTrace tp = partition_entropy_trace(*cfg.system, cfg.mu0, *p, hz,
                                            budget, cfg.system_label, pname);
  EntropyTrace tq = partition_entropy_trace(*cfg.system, cfg.mu0, *q, hz,
                                            budget, cfg.system_label, qname);
  r.columns = {"n", "p_value_bits", "q_value_bits", "abs_diff_bits"};
  bool bounded = true;
  for (std::size_t i = 0; i < tp.rows.size(); ++i) {
    const double gap =
        std::fabs(tp.rows[i].value_bits - tq.rows[i].value_bits);
    bounded = bounded && gap <= dist + 1e-9;
    r.rows.push_back({fmt_ll(tp.rows[i].n), format_g12(tp.rows[i].value_bits),
                      format_g12(tq.rows[i].value_bits), format_g12(gap)});
  }
  r.value_bits = dist;
  r.value_desc =
      "symmetric conditional-entropy distance over the horizon (bits)";
  r.facts.emplace_back("partitions", pname);
  r.facts.emplace_back("partitions_b", qname);
  r.facts.emplace_back("entropy_gap_within_distance", bounded ? "true" : "false");
  return r;
}

ExperimentResult run_certify(const ExperimentConfig& cfg, Budget& budget) {
  ExperimentResult r;
  auto [pname, ps] = pick_partitions(cfg);
  auto hz = horizons_or(cfg, {512});
  const long long horizon = hz.back();
  MeasureSequence mus(cfg.system, cfg.mu0);
  MisiurewiczCertificate cert =
      misiurewicz_certificate(mus, *ps, cfg.eps_cert, horizon, budget);
  r.columns = {"n", "gap", "min_margin", "has_gap"};
  for (const auto& cp : cert.checkpoints) {
    Rational min_margin(0);
    if (!cp.cell_margins.empty()) {
      min_margin = *std::min_element(cp.cell_margins.begin(),
                                     cp.cell_margins.end());
    }
    r.rows.push_back({fmt_ll(cp.n), cp.gap.str(), min_margin.str(),
                      cp.has_gap ? "1" : "0"});
  }
  r.value_bits = cert.pass ? 1.0 : 0.0;
  r.value_desc = "core-separation certificate pass flag";
  r.facts.emplace_back("partitions", pname);
  r.facts.emplace_back("eps", cfg.eps_cert.str());
  r.facts.emplace_back("horizon", fmt_ll(horizon));
  r.facts.emplace_back("delta", cert.delta.str());
  r.facts.emplace_back("fail_n", fmt_ll(cert.fail_n));
  r.facts.emplace_back("fail_cells", cert.fail_cells);
  r.facts.emplace_back("reason", cert.reason);
  return r;
}

ExperimentResult run_power_rule(const ExperimentConfig& cfg, Budget& budget) {
  ExperimentResult r;
  if (cfg.system->is_power()) {
    throw UsageError("power-rule expects a base (non-power) system");
  }
  const long long m = cfg.m;
  if (m > 12) {
    throw UsageError("power-rule exponent m = " + std::to_string(m) +
                     " is too large; the cover for the power system needs "
                     "2^m elements (m <= 12)");
  }
  std::shared_ptr<const NDSystem> power = NDSystem::power_of(cfg.system, m);
  auto hz = slope_horizons(horizons_or(cfg, {1, 2}));
  const Rational delta = cfg.eps.empty() ? Rational(1, 100) : cfg.eps.front();
  // A cover can never count past log2(#elements) bits per step: the refined
  // elements are indexed by one choice per step.  The power system compresses
  // m steps into one, so it needs a cover with 2^m elements to register the
  // same detail the two-element cover sees on the base system.
  CoverSequence base_covers = near_uniform_cover(2, delta);
  CoverSequence power_covers = near_uniform_cover(1LL << m, delta);
  std::vector<std::pair<CoverCountReport, CoverCountReport>> reports;
  for (long long h : hz) {
    CoverCountReport base_rep =
        cover_refinement_count(*cfg.system, base_covers, m * h, budget);
    CoverCountReport pow_rep =
        cover_refinement_count(*power, power_covers, h, budget);
    r.rows.push_back({fmt_ll(h), fmt_ll(m * h), fmt_ll(base_rep.minimal),
                      fmt_ll(pow_rep.minimal)});
    reports.emplace_back(base_rep, pow_rep);
  }
  r.columns = {"h", "base_n", "base_minimal", "power_minimal"};
  double slope_base = 0.0, slope_pow = 0.0;
  if (reports.size() >= 2) {
    slope_base = count_slope(reports.front().first.minimal, m * hz.front(),
                             reports.back().first.minimal, m * hz.back());
    slope_pow = count_slope(reports.front().second.minimal, hz.front(),
                            reports.back().second.minimal, hz.back());
  }
  r.value_bits = slope_base > 0.0 ? slope_pow / slope_base : 0.0;
  r.value_desc = "power/base cover-count growth-slope ratio";
  r.facts.emplace_back("m", fmt_ll(m));
  r.facts.emplace_back("delta", delta.str());
  r.facts.emplace_back("power_cover_cells", fmt_ll(1LL << m));
  r.facts.emplace_back("base_slope_bits", format_g12(slope_base));
  r.facts.emplace_back("power_slope_bits", format_g12(slope_pow));

  // Exact finite-horizon identity for the measure side: with Q the m-step
  // join of P, the h-step join of Q under the power system equals the
  // (m*h)-step join of P under the base system — same index windows — so the
  // per-step quotients differ by the factor m exactly.  Needs every window
  // to look alike: constant schedule, constant partitions.
  bool identity_applicable =
      cfg.system->schedule().kind() == SystemSchedule::Kind::constant &&
      !(cfg.partitions.empty() && !cfg.partitions_override);
  if (identity_applicable) {
    auto [pname, ps] = pick_partitions(cfg);
    if (ps->kind() == PartitionSequence::Kind::constant) {
      const long long h2 = hz.back();
      Partition q_join = joined_partition(*cfg.system, *ps, Integer(0),
                                          m, budget);
      Partition base_join = joined_partition(*cfg.system, *ps, Integer(0),
                                             m * h2, budget);
      Partition pow_join =
          joined_partition(*power, PartitionSequence::constant(q_join),
                           Integer(0), h2, budget);
      const bool equal = base_join.equals_mod_null(pow_join);
      const double hb = shannon_entropy_bits(cfg.mu0, base_join);
      const double hp = shannon_entropy_bits(cfg.mu0, pow_join);
      const double qb = hb / static_cast<double>(m * h2);
      const double qp = hp / static_cast<double>(h2);
      r.facts.emplace_back("measure_joins_equal", equal ? "true" : "false");
      r.facts.emplace_back("measure_partitions", pname);
      r.facts.emplace_back("measure_base_bits", format_g12(qb));
      r.facts.emplace_back("measure_power_bits", format_g12(qp));
      r.facts.emplace_back("measure_ratio",
                           format_g12(qb > 0.0 ? qp / qb : 0.0));
    } else {
      r.facts.emplace_back("measure_joins_equal",
                           "skipped (constant partition sequences only)");
    }
  } else {
    r.facts.emplace_back("measure_joins_equal",
                         "skipped (constant schedules only)");
  }
  return r;
}

ExperimentResult run_weak_star(const ExperimentConfig& cfg, Budget& budget) {
  ExperimentResult r;
  const Rational cut = cfg.eps_cert;
  const Rational level(99, 100);
  auto hz = horizons_or(cfg, {0, 2, 3});
  std::vector<Integer> times;
  times.reserve(hz.size());
  for (long long t : hz) times.push_back(Integer(static_cast<long>(t)));
  MeasureSequence mus(cfg.system, cfg.mu0);
  WeakStarReport rep = weak_star_diagnostic(
      mus, default_weak_star_tests(cut), times, cut, level, 64, budget);
  r.columns = {"time", "mass", "mass_double"};
  for (const auto& [t, mass] : rep.threshold.trail) {
    r.rows.push_back(
        {Rational(t).str(), mass.str(), format_g12(mass.to_double())});
  }
  if (rep.threshold.found) {
    r.value_bits = rep.threshold.mass.to_double();
  } else if (!rep.threshold.trail.empty()) {
    r.value_bits = rep.threshold.trail.back().second.to_double();
  }
  r.value_desc =
      "target-interval mass at the first examined time reaching the level "
      "(fraction)";
  r.facts.emplace_back("cut", cut.str());
  r.facts.emplace_back("level", level.str());
  r.facts.emplace_back("threshold_found",
                       rep.threshold.found ? "true" : "false");
  if (rep.threshold.found) {
    r.facts.emplace_back("threshold_time", Rational(rep.threshold.time).str());
    r.facts.emplace_back("threshold_mass", rep.threshold.mass.str());
  }
  r.facts.emplace_back("monotone_proven",
                       rep.threshold.monotone_proven ? "true" : "false");
  for (std::size_t t = 0; t < rep.test_names.size(); ++t) {
    r.facts.emplace_back("limit[" + rep.test_names[t] + "]",
                         rep.limit_values[t].str());
  }
  for (const auto& row : rep.rows) {
    for (std::size_t t = 0; t < rep.test_names.size(); ++t) {
      r.facts.emplace_back(
          "integral[" + rep.test_names[t] + "]@t=" + Rational(row.time).str(),
          row.integrals[t].str());
    }
  }
  return r;
}

ExperimentResult run_emax_demo(const ExperimentConfig& cfg, Budget& budget) {
  ExperimentResult r;
  auto hz = horizons_or(cfg, {20});
  EmaxDemo demo = emax_blowup_demo(budget, hz.back());
  r.columns = {"n", "value_bits", "cells"};
  bool all_one = true;
  for (const auto& row : demo.trace.rows) {
    all_one = all_one && row.value_bits == 1.0;
    r.rows.push_back({fmt_ll(row.n), format_g12(row.value_bits),
                      fmt_ll(static_cast<long long>(row.cells))});
  }
  const bool pass =
      all_one && demo.topo_estimate_bits <= 0.05 && !demo.certificate.pass;
  r.value_bits = pass ? 1.0 : 0.0;
  r.value_desc =
      "pathology demo pass flag (measure trace exactly 1 bit, topological "
      "estimate below 0.05, certificate fails)";
  r.facts.emplace_back("measure_all_exactly_one", all_one ? "true" : "false");
  r.facts.emplace_back("topo_estimate_bits",
                       format_g12(demo.topo_estimate_bits));
  r.facts.emplace_back("certificate_pass",
                       demo.certificate.pass ? "true" : "false");
  r.facts.emplace_back("certificate_reason", demo.certificate.reason);
  return r;
}

ExperimentResult run_circle_formulas(const ExperimentConfig& cfg) {
  ExperimentResult r;
  auto hz = horizons_or(cfg, {2, 4, 6});
  std::vector<CircleEntropyRow> rows =
      expanding_circle_entropies(*cfg.system, cfg.mu0, hz);
  if (rows.empty()) throw UsageError("horizons must be nonempty");
  r.columns = {"n", "topological_bits", "measure_bits"};
  bool same = true;
  for (const auto& row : rows) {
    same = same && row.topological_bits == row.measure_bits;
    r.rows.push_back({fmt_ll(row.n), format_g12(row.topological_bits),
                      format_g12(row.measure_bits)});
  }
  r.value_bits = rows.back().topological_bits;
  r.value_desc = "exact topological value at the final horizon (bits)";
  r.facts.emplace_back("topo_equals_measure", same ? "true" : "false");
  return r;
}

std::string relation_str(ExpectedValue::Relation rel) {
  switch (rel) {
    case ExpectedValue::Relation::equals: return "equals";
    case ExpectedValue::Relation::at_least: return "at-least";
    case ExpectedValue::Relation::at_most: return "at-most";
  }
  return "equals";
}

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ExperimentConfig parse_experiment_config(const std::string& text,
                                         const fs::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  const std::string ctx = "config";
  expect_fields(j, ctx, {"kind", "system"},
                {"partitions", "partitions_b", "mu0", "horizons", "n", "eps",
                 "grid_step", "m", "k", "eps_cert", "out", "seed"});

  ExperimentConfig cfg;
  cfg.canonical_text = j.dump();
  cfg.config_hash = fnv1a64(cfg.canonical_text);

  cfg.kind = read_string(j.at("kind"), ctx + ".kind");
  bool known_kind = false;
  for (const char* k : kKinds) known_kind = known_kind || cfg.kind == k;
  if (!known_kind) {
    std::string kinds;
    for (const char* k : kKinds) kinds += std::string(kinds.empty() ? "" : ", ") + k;
    fail(ctx + ".kind", "unknown kind \"" + cfg.kind + "\" (one of: " + kinds + ")");
  }

  const json& js = j.at("system");
  if (js.is_string()) {
    const std::string id = js.get<std::string>();
    try {
      CatalogEntry entry = catalog_entry(id);
      cfg.system_label = id;
      cfg.system = entry.system;
      cfg.mu0 = entry.mu0;
      cfg.partitions = entry.partitions;
      cfg.expected = entry.expected;
    } catch (const Error& e) {
      fail(ctx + ".system", e.what());
    }
  } else if (is_path_ref(js)) {
    const fs::path p =
        resolve(base_dir, read_string(js.at("path"), ctx + ".system.path"));
    cfg.system = system_from_json(read_file(p));
    cfg.system_label = p.generic_string();
  } else if (js.is_object()) {
    cfg.system = system_from_json(js.dump());
    cfg.system_label = "(inline)";
  } else {
    fail(ctx + ".system",
         "expected a catalog id, {\"path\": ...}, or an inline system object");
  }

  if (j.contains("partitions")) {
    const json& jp = j.at("partitions");
    if (jp.is_string()) {
      const std::string name = jp.get<std::string>();
      bool found = false;
      for (const auto& [n, ps] : cfg.partitions) {
        if (n == name) {
          cfg.partitions_override = ps;
          found = true;
        }
      }
      if (!found) {
        fail(ctx + ".partitions",
             "no partition sequence named \"" + name + "\" on this system");
      }
    } else {
      cfg.partitions_override = partition_sequence_from_json(
          fetch_text(jp, ctx + ".partitions", base_dir));
    }
  }
  if (j.contains("partitions_b")) {
    const json& jp = j.at("partitions_b");
    if (jp.is_string()) {
      const std::string name = jp.get<std::string>();
      bool found = false;
      for (const auto& [n, ps] : cfg.partitions) {
        if (n == name) {
          cfg.partitions_b = ps;
          found = true;
        }
      }
      if (!found) {
        fail(ctx + ".partitions_b",
             "no partition sequence named \"" + name + "\" on this system");
      }
    } else {
      cfg.partitions_b = partition_sequence_from_json(
          fetch_text(jp, ctx + ".partitions_b", base_dir));
    }
  }
  if (j.contains("mu0")) {
    cfg.mu0 = measure_from_json(fetch_text(j.at("mu0"), ctx + ".mu0", base_dir));
  }

  if (j.contains("horizons") && j.contains("n")) {
    fail(ctx, "give either \"horizons\" or \"n\", not both");
  }
  if (j.contains("horizons")) {
    const json& jh = j.at("horizons");
    if (!jh.is_array()) fail(ctx + ".horizons", "expected an array");
    for (std::size_t i = 0; i < jh.size(); ++i) {
      const std::string hctx = ctx + ".horizons[" + std::to_string(i) + "]";
      const long long h = read_int64(jh[i], hctx);
      if (h < 0) fail(hctx, "horizons must be nonnegative");
      if (!cfg.horizons.empty() && h <= cfg.horizons.back()) {
        fail(ctx + ".horizons", "must be strictly increasing");
      }
      cfg.horizons.push_back(h);
    }
  }
  if (j.contains("n")) {
    const long long h = read_int64(j.at("n"), ctx + ".n");
    if (h < 0) fail(ctx + ".n", "must be nonnegative");
    cfg.horizons.push_back(h);
  }

  if (j.contains("eps")) {
    const json& je = j.at("eps");
    const auto add = [&](const json& v, const std::string& ectx) {
      Rational e = read_rational(v, ectx);
      if (!(Rational(0) < e)) fail(ectx, "eps must be positive");
      cfg.eps.push_back(std::move(e));
    };
    if (je.is_array()) {
      for (std::size_t i = 0; i < je.size(); ++i) {
        add(je[i], ctx + ".eps[" + std::to_string(i) + "]");
      }
    } else {
      add(je, ctx + ".eps");
    }
  }

  if (j.contains("grid_step")) {
    cfg.grid_step = read_rational(j.at("grid_step"), ctx + ".grid_step");
    if (!(Rational(0) < cfg.grid_step)) {
      fail(ctx + ".grid_step", "must be positive");
    }
  }
  if (j.contains("m")) {
    cfg.m = read_int64(j.at("m"), ctx + ".m");
    if (cfg.m < 1) fail(ctx + ".m", "must be at least 1");
  }
  if (j.contains("k")) {
    cfg.k = read_int64(j.at("k"), ctx + ".k");
    if (cfg.k < 1) fail(ctx + ".k", "must be at least 1");
  }
  if (j.contains("eps_cert")) {
    cfg.eps_cert = read_rational(j.at("eps_cert"), ctx + ".eps_cert");
    if (!(Rational(0) < cfg.eps_cert) || Rational(1) < cfg.eps_cert) {
      fail(ctx + ".eps_cert", "must lie in (0, 1]");
    }
  }
  cfg.out = j.contains("out") ? read_string(j.at("out"), ctx + ".out") : "";
  if (cfg.out.empty()) cfg.out = cfg.kind;
  if (j.contains("seed")) cfg.seed = read_int64(j.at("seed"), ctx + ".seed");
  return cfg;
}

ExperimentConfig load_experiment_config(const fs::path& file) {
  return parse_experiment_config(read_file(file), file.parent_path());
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, Budget& budget,
                                int workers) {
  ExperimentResult r;
  if (cfg.kind == "meas-entropy") r = run_meas_entropy(cfg, budget);
  else if (cfg.kind == "topo-spanning") r = run_topo_spanning(cfg, budget, workers);
  else if (cfg.kind == "topo-cover") r = run_topo_cover(cfg, budget);
  else if (cfg.kind == "lipschitz-bound") r = run_lipschitz(cfg);
  else if (cfg.kind == "rokhlin") r = run_rokhlin(cfg, budget);
  else if (cfg.kind == "certify") r = run_certify(cfg, budget);
  else if (cfg.kind == "power-rule") r = run_power_rule(cfg, budget);
  else if (cfg.kind == "weak-star") r = run_weak_star(cfg, budget);
  else if (cfg.kind == "emax-demo") r = run_emax_demo(cfg, budget);
  else if (cfg.kind == "circle-formulas") r = run_circle_formulas(cfg);
  else throw UsageError("unknown computation kind: " + cfg.kind);
  r.kind = cfg.kind;
  return r;
}

std::string to_csv(const ExperimentResult& r) {
  std::string out;
  for (std::size_t c = 0; c < r.columns.size(); ++c) {
    if (c) out += ',';
    out += csv_field(r.columns[c]);
  }
  out += "\r\n";
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += csv_field(row[c]);
    }
    out += "\r\n";
  }
  return out;
}

std::string to_json_report(const ExperimentConfig& cfg,
                           const ExperimentResult& r) {
  json j;
  j["config"] = json::parse(cfg.canonical_text);
  j["config_hash"] = hash_hex(cfg.config_hash);
  j["kind"] = r.kind;
  j["system"] = cfg.system_label;
  j["seed"] = cfg.seed;
  j["out"] = cfg.out;
  j["value_bits"] = format_g12(r.value_bits);
  j["value_desc"] = r.value_desc;
  json facts = json::object();
  for (const auto& [k, v] : r.facts) facts[k] = v;
  j["facts"] = std::move(facts);
  json expected = json::array();
  for (const auto& e : cfg.expected) {
    expected.push_back(json{{"check", e.check},
                            {"value_bits", format_g12(e.value_bits)},
                            {"tolerance", format_g12(e.tolerance)},
                            {"relation", relation_str(e.relation)},
                            {"provenance", e.provenance},
                            {"note", e.note}});
  }
  j["expected"] = std::move(expected);
  j["columns"] = r.columns;
  j["row_count"] = r.rows.size();
  return j.dump(2) + "\n";
}

VerifyOutcome verify_experiment(const ExperimentConfig& cfg,
                                const ExperimentResult& r) {
  std::vector<ExpectedValue> matching;
  for (const auto& e : cfg.expected) {
    if (e.check == cfg.kind) matching.push_back(e);
  }
  if (matching.empty()) {
    throw UsageError("no declared expectation for kind \"" + cfg.kind +
                     "\" on system \"" + cfg.system_label + "\"");
  }
  VerifyOutcome out;
  for (const auto& e : matching) {
    const double v = r.value_bits;
    bool ok = false;
    std::string rel;
    switch (e.relation) {
      case ExpectedValue::Relation::equals:
        ok = std::fabs(v - e.value_bits) <= e.tolerance;
        rel = "==";
        break;
      case ExpectedValue::Relation::at_least:
        ok = v >= e.value_bits - e.tolerance;
        rel = ">=";
        break;
      case ExpectedValue::Relation::at_most:
        ok = v <= e.value_bits + e.tolerance;
        rel = "<=";
        break;
    }
    std::string line = cfg.kind + ": computed " + format_g12(v) + " " + rel +
                       " expected " + format_g12(e.value_bits) + " (tol " +
                       format_g12(e.tolerance) + ") [" + e.provenance + "] " +
                       (ok ? "PASS" : "FAIL");
    if (!e.note.empty()) line += " -- " + e.note;
    out.lines.emplace_back(std::move(line), ok);
    out.pass = out.pass && ok;
  }
  return out;
}

}  // namespace nds
