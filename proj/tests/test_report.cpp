#include "doctest.h"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "ndsent/errors.hpp"
#include "ndsent/report.hpp"
#include "ndsent/serialize.hpp"

using nds::Budget;
using nds::BudgetError;
using nds::ConfigError;
using nds::ExperimentConfig;
using nds::ExperimentResult;
using nds::Integer;
using nds::Rational;
using nds::UsageError;

namespace {

ExperimentResult run(const std::string& config_text,
                     std::int64_t budget_limit = Budget::kDefaultLimit) {
  ExperimentConfig cfg = nds::parse_experiment_config(config_text);
  Budget budget(budget_limit);
  return nds::run_experiment(cfg, budget);
}

std::string fact(const ExperimentResult& r, const std::string& key) {
  for (const auto& [k, v] : r.facts) {
    if (k == key) return v;
  }
  FAIL("missing fact: ", key);
  return "";
}

}  // namespace

TEST_CASE("minimal config parses with documented defaults") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "lipschitz-bound", "system": "identity"})");
  CHECK(cfg.kind == "lipschitz-bound");
  CHECK(cfg.system_label == "identity");
  CHECK(cfg.system != nullptr);
  CHECK(cfg.horizons.empty());
  CHECK(cfg.eps.empty());
  CHECK(cfg.grid_step == Rational(1, 100));
  CHECK(cfg.m == 2);
  CHECK(cfg.k == 1);
  CHECK(cfg.eps_cert == Rational(1, 100));
  CHECK(cfg.out == "lipschitz-bound");
  CHECK(cfg.seed == ExperimentConfig::kDefaultSeed);
  CHECK(cfg.partitions.size() == 1);  // catalog entry brings "halves"
  CHECK_FALSE(cfg.expected.empty());
}

TEST_CASE("config validation rejects malformed documents") {
  using nds::parse_experiment_config;
  // Not JSON / wrong shapes.
  CHECK_THROWS_AS((void)parse_experiment_config("nope"), ConfigError);
  CHECK_THROWS_AS((void)parse_experiment_config("[]"), ConfigError);
  // Missing required fields.
  CHECK_THROWS_AS((void)parse_experiment_config(R"({"kind": "certify"})"),
                  ConfigError);
  // Unknown field.
  CHECK_THROWS_AS((void)parse_experiment_config(
                      R"({"kind": "certify", "system": "bo", "extra": 1})"),
                  ConfigError);
  // Unknown kind / system.
  CHECK_THROWS_AS((void)parse_experiment_config(
                      R"({"kind": "entropy", "system": "bo"})"),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_experiment_config(
                      R"({"kind": "certify", "system": "unknown"})"),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_experiment_config(
                      R"({"kind": "certify", "system": 7})"),
                  ConfigError);
  // Horizon rules.
  CHECK_THROWS_AS(
      (void)parse_experiment_config(
          R"({"kind": "certify", "system": "bo", "horizons": [4, 2]})"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_experiment_config(
          R"({"kind": "certify", "system": "bo", "horizons": [-1]})"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_experiment_config(
          R"({"kind": "certify", "system": "bo", "horizons": [2], "n": 4})"),
      ConfigError);
  // Parameter ranges.
  CHECK_THROWS_AS((void)parse_experiment_config(
                      R"({"kind": "certify", "system": "bo", "m": 0})"),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_experiment_config(
                      R"({"kind": "certify", "system": "bo", "k": 0})"),
                  ConfigError);
  CHECK_THROWS_AS(
      (void)parse_experiment_config(
          R"({"kind": "certify", "system": "bo", "eps_cert": "2"})"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_experiment_config(
          R"({"kind": "certify", "system": "bo", "eps": "0"})"),
      ConfigError);
  CHECK_THROWS_AS(
      (void)parse_experiment_config(
          R"({"kind": "certify", "system": "bo", "eps": ["1/10", "bad"]})"),
      ConfigError);
  // Partition name must exist on the entry.
  CHECK_THROWS_AS(
      (void)parse_experiment_config(
          R"({"kind": "certify", "system": "bo", "partitions": "fifths"})"),
      ConfigError);
}

TEST_CASE("config hash is FNV-1a-64 of the canonical text") {
  CHECK(nds::fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(nds::fnv1a64("a") == 0xaf63dc4c8601ec8cull);

  const std::string text =
      R"({"kind": "lipschitz-bound", "system": "identity", "n": 4})";
  ExperimentConfig cfg = nds::parse_experiment_config(text);
  CHECK(cfg.config_hash == nds::fnv1a64(cfg.canonical_text));
  // Whitespace-insensitive (canonical text is the sorted compact dump)...
  ExperimentConfig spaced = nds::parse_experiment_config(
      R"({ "kind":"lipschitz-bound",   "system":"identity", "n":4 })");
  CHECK(spaced.config_hash == cfg.config_hash);
  // ...but any semantic change moves the hash.
  ExperimentConfig other = nds::parse_experiment_config(
      R"({"kind": "lipschitz-bound", "system": "identity", "n": 5})");
  CHECK(other.config_hash != cfg.config_hash);
}

TEST_CASE("doubling measure entropy is exactly one bit and verifies") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "meas-entropy", "system": "doubling", "horizons": [1, 2, 4, 8]})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.columns ==
        std::vector<std::string>{"n", "value_bits", "cells", "budget_used"});
  REQUIRE(r.rows.size() == 4);
  for (const auto& row : r.rows) CHECK(row[1] == "1");
  CHECK(r.rows[3][0] == "8");
  CHECK(r.rows[3][2] == "256");  // 2^8 joined cells
  CHECK(r.value_bits == 1.0);
  CHECK(fact(r, "partitions") == "halves");

  auto outcome = nds::verify_experiment(cfg, r);
  CHECK(outcome.pass);
  REQUIRE(outcome.lines.size() == 1);
  CHECK(outcome.lines[0].second);
  CHECK(outcome.lines[0].first.find("PASS") != std::string::npos);
}

TEST_CASE("identity spanning growth slope is exactly zero") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "topo-spanning", "system": "identity",
          "horizons": [4, 8], "eps": "1/10", "grid_step": "1/50"})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.columns == std::vector<std::string>{"n", "eps", "lower_bits",
                                              "upper_bits", "grid_step"});
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0][1] == "1/10");
  CHECK(r.rows[0][4] == "1/50");
  CHECK(r.value_bits == 0.0);
  CHECK(fact(r, "separated_lower@n=4") == fact(r, "separated_lower@n=8"));
  CHECK(nds::verify_experiment(cfg, r).pass);
}

TEST_CASE("doubling cover growth slope is exactly one bit") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "topo-cover", "system": "doubling"})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  REQUIRE(r.rows.size() == 2);  // default horizons {2, 6}
  CHECK(r.rows[0][0] == "2");
  CHECK(r.rows[0][3] == "4");   // minimal subcover 2^2
  CHECK(r.rows[1][0] == "6");
  CHECK(r.rows[1][3] == "64");  // minimal subcover 2^6
  CHECK(r.value_bits == 1.0);
  CHECK(fact(r, "all_counts_proven_minimal") == "true");
  CHECK(nds::verify_experiment(cfg, r).pass);
}

TEST_CASE("two-map expansion bound matches the declared value at 512") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "lipschitz-bound", "system": "bo", "n": 512})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  REQUIRE(r.rows.size() == 512);
  const double want = (509.0 * std::log2(3.0) + 3.0) / 512.0;
  CHECK(r.value_bits == doctest::Approx(want).epsilon(1e-12));
  auto outcome = nds::verify_experiment(cfg, r);
  CHECK(outcome.pass);
}

TEST_CASE("rokhlin distance between thirds and sixths is one bit") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "rokhlin", "system": "bo", "horizons": [2]})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(fact(r, "partitions") == "thirds");
  CHECK(fact(r, "partitions_b") == "sixths");
  // Each third splits into two equal-mass sixths under every chain measure
  // examined, so the conditional entropy sums to exactly one bit.
  CHECK(r.value_bits == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fact(r, "entropy_gap_within_distance") == "true");
}

TEST_CASE("certificate run on the two-map chain passes with margin 1/100") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "certify", "system": "bo"})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.value_bits == 1.0);
  CHECK(fact(r, "delta") == "1/100");
  CHECK(fact(r, "partitions") == "thirds");
  CHECK(fact(r, "horizon") == "512");
  CHECK_FALSE(r.rows.empty());
  CHECK(nds::verify_experiment(cfg, r).pass);
}

TEST_CASE("power rule growth-slope ratio is exactly the exponent") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "power-rule", "system": "doubling", "m": 2,
          "horizons": [1, 2]})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.columns ==
        std::vector<std::string>{"h", "base_n", "base_minimal", "power_minimal"});
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0][2] == "4");   // base at n=2, two-slab cover
  CHECK(r.rows[0][3] == "4");   // power at h=1, four-slab cover
  CHECK(r.rows[1][2] == "16");  // base at n=4
  CHECK(r.rows[1][3] == "16");  // power at h=2
  CHECK(fact(r, "power_cover_cells") == "4");
  CHECK(r.value_bits == 2.0);
  CHECK(fact(r, "measure_joins_equal") == "true");
  CHECK(fact(r, "measure_ratio") == "2");
}

TEST_CASE("weak-star threshold is reported with its exact mass") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "weak-star", "system": "bo"})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(fact(r, "threshold_found") == "true");
  CHECK(fact(r, "monotone_proven") == "true");
  CHECK(fact(r, "threshold_mass") == "1591/1600");
  Integer t(1);
  for (int i = 0; i < 121; ++i) t *= 2;
  t += 1;
  CHECK(fact(r, "threshold_time") == Rational(t).str());
  REQUIRE(r.rows.size() == 13);
  CHECK(r.rows.back()[1] == "1591/1600");
  CHECK(r.value_bits == doctest::Approx(1591.0 / 1600.0).epsilon(1e-12));
  CHECK(nds::verify_experiment(cfg, r).pass);
}

TEST_CASE("two-map measure entropy documents the declared gap honestly") {
  // The config mirror of the declared-but-unrealized target: the computed
  // quotient at horizon 16 stalls near 0.130 bits, so verification reports
  // the violation instead of passing.
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "meas-entropy", "system": "bo", "horizons": [2, 16], "k": 1})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.value_bits ==
        doctest::Approx(2.0849625007211562 / 16.0).epsilon(1e-9));
  auto outcome = nds::verify_experiment(cfg, r);
  CHECK_FALSE(outcome.pass);
  REQUIRE(outcome.lines.size() == 1);
  CHECK_FALSE(outcome.lines[0].second);
  CHECK(outcome.lines[0].first.find("FAIL") != std::string::npos);
}

TEST_CASE("emax demo passes through the runner") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "emax-demo", "system": "digit-demo", "horizons": [12]})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.value_bits == 1.0);
  CHECK(fact(r, "measure_all_exactly_one") == "true");
  CHECK(fact(r, "certificate_pass") == "false");
  REQUIRE(r.rows.size() == 12);
  CHECK(r.rows[11][1] == "1");
  CHECK(nds::verify_experiment(cfg, r).pass);
}

TEST_CASE("circle formulas give the exact alternation and slope values") {
  ExperimentConfig alt = nds::parse_experiment_config(
      R"({"kind": "circle-formulas", "system": "circle-alt"})");
  Budget budget;
  ExperimentResult ra = nds::run_experiment(alt, budget);
  CHECK(ra.value_bits == 1.5);
  CHECK(fact(ra, "topo_equals_measure") == "true");
  CHECK(nds::verify_experiment(alt, ra).pass);

  ExperimentConfig triple = nds::parse_experiment_config(
      R"({"kind": "circle-formulas", "system": "circle-triple"})");
  ExperimentResult rt = nds::run_experiment(triple, budget);
  CHECK(rt.value_bits == std::log2(3.0));
  CHECK(nds::verify_experiment(triple, rt).pass);
}

TEST_CASE("k selects among the declared partition sequences") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "meas-entropy", "system": "bo", "horizons": [1], "k": 3})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(fact(r, "partitions") == "ninths");
  CHECK(r.value_bits == doctest::Approx(std::log2(9.0)).epsilon(1e-12));

  ExperimentConfig bad = nds::parse_experiment_config(
      R"({"kind": "meas-entropy", "system": "bo", "horizons": [1], "k": 7})");
  CHECK_THROWS_AS((void)nds::run_experiment(bad, budget), UsageError);
}

TEST_CASE("csv output is byte-stable and rfc-4180 shaped") {
  const std::string text =
      R"({"kind": "lipschitz-bound", "system": "identity", "n": 4})";
  std::string csv1 = nds::to_csv(run(text));
  std::string csv2 = nds::to_csv(run(text));
  CHECK(csv1 == csv2);
  CHECK(csv1.rfind("n,value_bits,running_sup\r\n", 0) == 0);
  std::size_t crlf = 0;
  for (std::size_t i = 0; i + 1 < csv1.size(); ++i) {
    if (csv1[i] == '\r' && csv1[i + 1] == '\n') ++crlf;
  }
  CHECK(crlf == 5);  // header + 4 rows
  CHECK(csv1.back() == '\n');

  // Quoting kicks in exactly when a field needs it.
  ExperimentResult fake;
  fake.columns = {"a", "b"};
  fake.rows = {{"x,y", "say \"hi\""}};
  CHECK(nds::to_csv(fake) == "a,b\r\n\"x,y\",\"say \"\"hi\"\"\"\r\n");
}

TEST_CASE("json report embeds the hash, config echo, and provenance") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "meas-entropy", "system": "doubling", "horizons": [1, 2]})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  const std::string report = nds::to_json_report(cfg, r);
  CHECK(report == nds::to_json_report(cfg, r));  // deterministic

  const auto doc = nlohmann::json::parse(report);
  const std::string hash = doc["config_hash"].get<std::string>();
  CHECK(hash.rfind("fnv1a64:", 0) == 0);
  CHECK(hash.size() == 8 + 16);
  CHECK(doc["config"] == nlohmann::json::parse(cfg.canonical_text));
  CHECK(doc["kind"] == "meas-entropy");
  CHECK(doc["system"] == "doubling");
  CHECK(doc["seed"] == ExperimentConfig::kDefaultSeed);
  CHECK(doc["value_bits"] == "1");
  CHECK(doc["row_count"] == 2);
  bool has_derived = false;
  for (const auto& e : doc["expected"]) {
    CHECK((e["provenance"] == "derived" || e["provenance"] == "trivial" ||
           e["provenance"] == "reference"));
    has_derived = has_derived || e["provenance"] == "derived";
  }
  CHECK(has_derived);
}

TEST_CASE("verify without a declared expectation is a usage error") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "rokhlin", "system": "bo", "horizons": [1]})");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK_THROWS_AS((void)nds::verify_experiment(cfg, r), UsageError);
}

TEST_CASE("path references resolve relative to the config file") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ndsent-report-paths";
  fs::create_directories(dir);
  {
    std::ofstream sys(dir / "sys.json", std::ios::binary);
    sys << nds::system_to_json(*nds::catalog_entry("tent").system);
  }
  {
    std::ofstream cfg(dir / "cfg.json", std::ios::binary);
    cfg << R"({"kind": "lipschitz-bound", "system": {"path": "sys.json"}, "n": 4})";
  }
  ExperimentConfig cfg = nds::load_experiment_config(dir / "cfg.json");
  CHECK(cfg.system_label.find("sys.json") != std::string::npos);
  CHECK(cfg.partitions.empty());  // file systems carry no partition bundles
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.value_bits == 1.0);  // tent slope 2 at every step

  CHECK_THROWS_AS((void)nds::load_experiment_config(dir / "absent.json"),
                  ConfigError);
}

TEST_CASE("inline systems run; partitions can be inlined too") {
  auto doubling = nds::catalog_entry("doubling");
  nlohmann::json j;
  j["kind"] = "meas-entropy";
  j["system"] = nlohmann::json::parse(nds::system_to_json(*doubling.system));
  j["horizons"] = {1, 2};
  j["partitions"] = nlohmann::json::parse(
      nds::partition_sequence_to_json(doubling.default_partitions()));
  ExperimentConfig cfg = nds::parse_experiment_config(j.dump());
  CHECK(cfg.system_label == "(inline)");
  Budget budget;
  ExperimentResult r = nds::run_experiment(cfg, budget);
  CHECK(r.value_bits == 1.0);
  CHECK(fact(r, "partitions") == "(config)");
  // Inline systems declare no expectations.
  CHECK_THROWS_AS((void)nds::verify_experiment(cfg, r), UsageError);

  // Without partitions the same run is impossible and says so.
  nlohmann::json bare = j;
  bare.erase("partitions");
  ExperimentConfig cfg2 = nds::parse_experiment_config(bare.dump());
  CHECK_THROWS_AS((void)nds::run_experiment(cfg2, budget), UsageError);
}

TEST_CASE("budget exhaustion surfaces as a budget error") {
  ExperimentConfig cfg = nds::parse_experiment_config(
      R"({"kind": "meas-entropy", "system": "doubling", "horizons": [16]})");
  Budget tiny(500);
  CHECK_THROWS_AS((void)nds::run_experiment(cfg, tiny), BudgetError);
}
