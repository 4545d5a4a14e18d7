#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ndsent/catalog.hpp"

namespace nds {

// FNV-1a 64-bit hash; fingerprints configuration documents inside reports.
std::uint64_t fnv1a64(std::string_view text);

// Formats a double with 12 significant digits, '.' decimal point, no locale.
std::string format_g12(double v);

// A fully resolved experiment: the parsed configuration document plus every
// object it references (catalog entry, inline JSON, or side files).
//
// Configuration document fields:
//   kind        (required) one of: meas-entropy, topo-spanning, topo-cover,
//               lipschitz-bound, rokhlin, certify, power-rule, weak-star,
//               emax-demo, circle-formulas
//   system      (required) catalog id string, {"path": file}, or an inline
//               system object
//   partitions  partition-sequence name within the catalog entry,
//               {"path": file}, or an inline object; overrides `k`
//   partitions_b  second partition sequence for `rokhlin`
//   mu0         {"path": file} or inline measure object; default from the
//               catalog entry (Lebesgue for plain systems)
//   horizons    strictly increasing array of nonnegative integers
//   n           single-horizon shorthand (exclusive with `horizons`)
//   eps         "p/q" string or array of them (resolutions; first entry also
//               serves as the cover half-overlap delta)
//   grid_step   "p/q", default 1/100
//   m           power-rule exponent, default 2
//   k           1-based choice among the entry's partition sequences, default 1
//   eps_cert    "p/q" used by certify (cell slack) and weak-star (cut),
//               default 1/100
//   out         output file stem, default = kind
//   seed        recorded in reports for randomized consumers, default fixed
// Unknown fields are rejected.
struct ExperimentConfig {
  static constexpr long long kDefaultSeed = 1729;

  std::string kind;
  std::string system_label;  // catalog id, file path, or "(inline)"
  std::shared_ptr<const NDSystem> system;
  PwConstMeasure mu0 = PwConstMeasure::lebesgue();
  // Named partition sequences brought by the catalog entry (empty for inline
  // systems unless the config supplies one).
  std::vector<std::pair<std::string, PartitionSequence>> partitions;
  std::optional<PartitionSequence> partitions_override;
  std::optional<PartitionSequence> partitions_b;
  std::vector<ExpectedValue> expected;  // declared by the catalog entry

  std::vector<long long> horizons;  // empty -> per-kind default
  std::vector<Rational> eps;        // empty -> per-kind default
  Rational grid_step = Rational(1, 100);
  long long m = 2;
  long long k = 1;
  Rational eps_cert = Rational(1, 100);
  std::string out;
  long long seed = kDefaultSeed;

  std::string canonical_text;  // sorted-key compact dump of the document
  std::uint64_t config_hash = 0;
};

// Parses and resolves a configuration document.  `base_dir` anchors relative
// {"path": ...} references (empty = current directory).  All validation
// failures raise ConfigError.
ExperimentConfig parse_experiment_config(
    const std::string& text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& file);

// Outcome of one experiment: a formatted table (one CSV artifact), a single
// headline value in bits used by verification, and exact side facts.
//
// Headline per kind:
//   meas-entropy     entropy quotient at the final horizon
//   topo-spanning    separated-count growth slope between the first and last
//                    horizon (single horizon: the certified lower quotient)
//   topo-cover       minimal-subcover growth slope (same convention)
//   lipschitz-bound  expansion upper bound at the final horizon
//   rokhlin          symmetric conditional-entropy distance over the horizon
//   certify          1.0 when the core-separation certificate passes, else 0.0
//   power-rule       power/base cover-count growth-slope ratio
//   weak-star        mass of [0, cut) at the found threshold time (last
//                    examined mass when no threshold was found)
//   emax-demo        1.0 when the pathology demo holds exactly, else 0.0
//   circle-formulas  exact topological value at the final horizon
struct ExperimentResult {
  std::string kind;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // formatted fields
  double value_bits = 0.0;
  std::string value_desc;
  std::vector<std::pair<std::string, std::string>> facts;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg, Budget& budget,
                                int workers = 1);

// RFC-4180 style: header row, comma separator, CRLF line ends, quoting only
// when a field requires it.  Byte-identical for identical configs.
std::string to_csv(const ExperimentResult& r);

// Deterministic JSON report: echoes the canonical config, its hash, the
// headline value, facts, and the declared expectations with provenance.
std::string to_json_report(const ExperimentConfig& cfg,
                           const ExperimentResult& r);

// Checks the headline value against every expectation the config declares
// for this kind.  UsageError when none is declared.
struct VerifyOutcome {
  bool pass = true;
  std::vector<std::pair<std::string, bool>> lines;  // text, line verdict
};
VerifyOutcome verify_experiment(const ExperimentConfig& cfg,
                                const ExperimentResult& r);

}  // namespace nds
