#include <cmath>
#include <vector>

#include "doctest.h"
#include "ndsent/entropy_measure.hpp"
#include "ndsent/errors.hpp"
#include "support/test_maps.hpp"

using namespace ndtest;
using nds::Budget;
using nds::EntropyTrace;
using nds::Partition;
using nds::PartitionSequence;
using nds::PwConstMeasure;
using nds::Rational;

TEST_CASE("doubling with the halves partition runs at exactly one bit") {
  Budget budget;
  auto sys = constant_system(doubling_map());
  PartitionSequence halves =
      PartitionSequence::constant(Partition::uniform(2, "h"));
  EntropyTrace t = nds::partition_entropy_trace(
      *sys, PwConstMeasure::lebesgue(), halves, {1, 2, 3, 4, 5, 6}, budget,
      "db", "halves");
  REQUIRE(t.rows.size() == 6);
  for (const auto& r : t.rows) {
    // 2^n cells of mass 2^-n: every partial sum is dyadic, so the double
    // accumulation is exact and the quotient is exactly 1.
    CHECK(r.value_bits == 1.0);
    CHECK(r.cells == std::size_t(1) << r.n);
  }
  CHECK(t.running_max() == 1.0);
  CHECK(t.rows.back().budget_used > 0);
}

TEST_CASE("identity joins stall: entropy quotient decays like 1/n") {
  Budget budget;
  auto sys = constant_system(nds::PwAffineMap::identity());
  PartitionSequence thirds =
      PartitionSequence::constant(Partition::uniform(3, "t"));
  EntropyTrace t = nds::partition_entropy_trace(
      *sys, PwConstMeasure::lebesgue(), thirds, {1, 2, 4, 8}, budget);
  for (const auto& r : t.rows) {
    CHECK(r.value_bits == doctest::Approx(std::log2(3.0) / double(r.n)));
    CHECK(r.cells == 3);
  }
  CHECK(t.running_max() == doctest::Approx(std::log2(3.0)));
}

TEST_CASE("aperiodic two-map system with thirds: the join saturates") {
  Budget budget;
  auto sys = aperiodic_two_map_system();
  PartitionSequence thirds =
      PartitionSequence::constant(Partition::uniform(3, "t"));
  EntropyTrace t = nds::partition_entropy_trace(
      *sys, PwConstMeasure::lebesgue(), thirds, {1, 2, 4, 8, 16}, budget);
  CHECK(t.rows.front().value_bits == doctest::Approx(std::log2(3.0)));
  // By depth 16 the join has settled at five cells; the quotient collapses.
  CHECK(t.rows.back().cells == 5);
  CHECK(t.rows.back().value_bits ==
        doctest::Approx(2.0849625007211562 / 16.0));
  // Quotients fall monotonically once the join stops refining.
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    CHECK(t.rows[i].value_bits <= t.rows[i - 1].value_bits + 1e-12);
  }
}

TEST_CASE("finer per-step partitions never lower the trace") {
  Budget b1, b2;
  auto sys = constant_system(doubling_map());
  PartitionSequence thirds =
      PartitionSequence::constant(Partition::uniform(3, "t"));
  PartitionSequence sixths =
      PartitionSequence::constant(Partition::uniform(6, "s"));
  EntropyTrace coarse = nds::partition_entropy_trace(
      *sys, PwConstMeasure::lebesgue(), thirds, {1, 2, 3, 4}, b1);
  EntropyTrace fine = nds::partition_entropy_trace(
      *sys, PwConstMeasure::lebesgue(), sixths, {1, 2, 3, 4}, b2);
  for (std::size_t i = 0; i < coarse.rows.size(); ++i) {
    CHECK(fine.rows[i].value_bits >= coarse.rows[i].value_bits - 1e-12);
  }
}

TEST_CASE("trace differences obey the partition-distance bound") {
  // Constant partitions P (exact thirds) and Q (thirds nudged by 1/24).
  Budget budget;
  auto sys = constant_system(doubling_map());
  auto mu0 = PwConstMeasure::lebesgue();
  Partition P = Partition::uniform(3, "t");
  Partition Q(std::vector<Partition::Cell>{
      {"t0", nds::IntervalSet(nds::Interval::half_open(q(0), q(3, 8)))},
      {"t1", nds::IntervalSet(nds::Interval::half_open(q(3, 8), q(5, 8)))},
      {"t2", nds::IntervalSet(nds::Interval::half_open(q(5, 8), q(1)))}});
  PartitionSequence ps = PartitionSequence::constant(P);
  PartitionSequence qs = PartitionSequence::constant(Q);

  const long long horizon = 5;
  nds::MeasureSequence mus(sys, mu0);
  double rho = nds::rokhlin_distance_bits(ps, qs, mus, horizon, budget);

  std::vector<long long> horizons{1, 2, 3, 4, 5};
  EntropyTrace tp =
      nds::partition_entropy_trace(*sys, mu0, ps, horizons, budget);
  EntropyTrace tq =
      nds::partition_entropy_trace(*sys, mu0, qs, horizons, budget);
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    CHECK(std::fabs(tp.rows[i].value_bits - tq.rows[i].value_bits) <=
          rho + 1e-9);
  }
}

TEST_CASE("class entropy is the best running maximum") {
  Budget budget;
  auto sys = constant_system(doubling_map());
  auto mu0 = PwConstMeasure::lebesgue();
  auto mk = [&](long k, const char* tag) {
    return nds::partition_entropy_trace(
        *sys, mu0, PartitionSequence::constant(Partition::uniform(k)),
        {1, 2, 3}, budget, "db", tag);
  };
  EntropyTrace a = mk(2, "halves");
  EntropyTrace b = mk(3, "thirds");
  double sup = nds::class_entropy_sup({a, b});
  CHECK(sup == doctest::Approx(std::max(a.running_max(), b.running_max())));
  CHECK(sup >= 1.0);

  EntropyTrace alien = a;
  alien.system_id = "other";
  CHECK_THROWS_AS(nds::class_entropy_sup({a, alien}), nds::UsageError);
  CHECK_THROWS_AS(nds::class_entropy_sup({}), nds::UsageError);
}

TEST_CASE("horizon validation") {
  Budget budget;
  auto sys = constant_system(doubling_map());
  PartitionSequence halves =
      PartitionSequence::constant(Partition::uniform(2));
  CHECK_THROWS_AS(nds::partition_entropy_trace(
                      *sys, PwConstMeasure::lebesgue(), halves, {}, budget),
                  nds::UsageError);
  CHECK_THROWS_AS(
      nds::partition_entropy_trace(*sys, PwConstMeasure::lebesgue(), halves,
                                   {2, 2}, budget),
      nds::UsageError);
  CHECK_THROWS_AS(
      nds::partition_entropy_trace(*sys, PwConstMeasure::lebesgue(), halves,
                                   {0, 1}, budget),
      nds::UsageError);
}

TEST_CASE("digit partitions on the identity map pin the trace at one bit") {
  Budget budget;
  nds::EmaxDemo demo = nds::emax_blowup_demo(budget, 12);
  REQUIRE(demo.trace.rows.size() == 12);
  for (const auto& r : demo.trace.rows) {
    CHECK(r.value_bits == 1.0);  // exact: all masses are dyadic
    CHECK(r.cells == std::size_t(1) << r.n);
  }
  CHECK(demo.topo_estimate_bits <= 0.05);
  CHECK_FALSE(demo.certificate.pass);
  CHECK(demo.certificate.reason.find("decay") != std::string::npos);
}
