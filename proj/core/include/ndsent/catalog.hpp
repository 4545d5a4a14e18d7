#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ndsent/measure.hpp"
#include "ndsent/sequences.hpp"
#include "ndsent/system.hpp"

namespace nds {

// A documented expectation attached to a catalog system: the value (in bits)
// a named computation should produce, how that value was obtained, and the
// absolute tolerance for automated verification.  Provenance is one of
// "reference" (quoted from the construction the system realizes), "derived"
// (worked out independently and frozen), or "trivial" (immediate from the
// definitions).
struct ExpectedValue {
  // Relation the computed value must satisfy against value_bits.
  enum class Relation { equals, at_least, at_most };

  std::string check;  // computation kind this constrains (CLI vocabulary)
  double value_bits = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::equals;
  std::string provenance;  // "reference" | "derived" | "trivial"
  std::string note;
};

// Ready-to-run bundle: a system, its default initial measure, named partition
// sequences (the first one is the default), and documented expected values.
// Constructors are deterministic: repeated calls build identical entries.
struct CatalogEntry {
  std::string id;
  std::string title;
  std::string description;
  std::shared_ptr<const NDSystem> system;
  PwConstMeasure mu0 = PwConstMeasure::lebesgue();
  std::vector<std::pair<std::string, PartitionSequence>> partitions;
  std::vector<ExpectedValue> expected;

  // First partition sequence; UsageError when the entry declares none.
  const PartitionSequence& default_partitions() const;
  // Lookup by name; UsageError when absent.
  const PartitionSequence& partitions_named(const std::string& name) const;
  // Declared expectations for a computation kind (possibly several).
  std::vector<ExpectedValue> expectations_for(const std::string& check) const;
};

// The aperiodic two-map interval system: a middle-third zigzag by default,
// with a halving map injected at the sparse step set {2^(k^2)}.  Initial
// measure is Lebesgue; partition sequences are the constant uniform cuts
// into 3, 6 and 9 cells ("thirds" is the default).
CatalogEntry make_bo_system();

// Autonomous and periodic baseline entries with known values: identity,
// doubling, tent, rational circle rotation, the digit-partition demo, the
// alternating (2,4) expanding circle system, and the constant slope-3
// expanding circle system.
std::vector<CatalogEntry> make_baselines();

// make_bo_system() followed by make_baselines(), in a fixed order.
std::vector<CatalogEntry> full_catalog();
std::vector<std::string> catalog_ids();
// Entry by id; UsageError for an unknown id.
CatalogEntry catalog_entry(const std::string& id);

// Step indices below `bound` at which the two-map system applies the halving
// map: 1, 2, 16, 512, ... (the sequence 2^(k^2)).
std::vector<Integer> bo_on_steps_below(const Integer& bound);
// Length of the n-th all-zigzag block between consecutive halving steps:
// 2^(n^2) - 2^((n-1)^2) - 1 for n >= 1 (so n = 2 gives 13).
Integer bo_gap_length(std::size_t n);

// ---------------------------------------------------------------------------
// Weak-star diagnostic: exact integrals of piecewise-affine test functions
// against the pushforward chain mu_n, plus a threshold search for the time
// from which mu_n concentrates near 0.

struct WeakStarTest {
  std::string name;
  PwAffineMap phi;  // test function; values lie in [0,1] by construction
};

// phi(x) = max(0, 1 - x/cut): affine hat equal to 1 at 0, supported on
// [0, cut).  Requires 0 < cut <= 1.
WeakStarTest indicator_hat_test(const Rational& cut);
// phi constant equal to 1 (integrals witness mass conservation).
WeakStarTest constant_one_test();
// phi(x) = x (integrals decay when mass drifts toward 0).
WeakStarTest coordinate_test();
// {hat at the given cut, constant one, coordinate}.
std::vector<WeakStarTest> default_weak_star_tests(const Rational& cut);

struct WeakStarRow {
  Integer time;
  std::vector<Rational> integrals;  // one per test, in test order
};

struct WeakStarThreshold {
  Rational cut;    // target set [0, cut)
  Rational level;  // required mass
  // True when every map in the system's table satisfies
  // preimage([0,cut)) >= [0,cut), which makes n -> mu_n([0,cut)) provably
  // nondecreasing; the threshold then holds for every later time.
  bool monotone_proven = false;
  bool found = false;
  Integer time;   // first examined time with mass >= level
  Rational mass;  // exact mass at that time
  // (time, mass) at every examined candidate time, in scan order.
  std::vector<std::pair<Integer, Rational>> trail;
};

struct WeakStarReport {
  std::vector<std::string> test_names;
  std::vector<Rational> limit_values;  // phi(0) per test (point-mass-at-0 limit)
  std::vector<WeakStarRow> rows;
  WeakStarThreshold threshold;
};

// Integrals of `tests` against mu_t for each requested time, plus the
// threshold scan for mass(mu_t, [0,cut)) >= level.  Candidate times follow
// the schedule structure: for index-set schedules, time 0 and the step after
// each on-step (masses are constant across verified off-blocks); otherwise
// the consecutive times 0, 1, 2, ...  At most max_candidates candidates are
// examined.  Requires 0 < cut <= 1 and 0 < level <= 1.
WeakStarReport weak_star_diagnostic(const MeasureSequence& mus,
                                    const std::vector<WeakStarTest>& tests,
                                    const std::vector<Integer>& times,
                                    const Rational& cut, const Rational& level,
                                    std::size_t max_candidates, Budget& budget);

}  // namespace nds
