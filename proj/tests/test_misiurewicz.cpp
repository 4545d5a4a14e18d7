#include <vector>

#include "doctest.h"
#include "ndsent/errors.hpp"
#include "ndsent/misiurewicz.hpp"
#include "support/test_maps.hpp"

using namespace ndtest;
using nds::Budget;
using nds::Integer;
using nds::Interval;
using nds::MeasureSequence;
using nds::MisiurewiczCertificate;
using nds::Partition;
using nds::PartitionSequence;
using nds::PwConstMeasure;
using nds::Rational;

TEST_CASE("aperiodic two-map system with thirds: certified separation") {
  Budget budget;
  auto sys = aperiodic_two_map_system();
  MeasureSequence mus(sys, PwConstMeasure::lebesgue());
  PartitionSequence thirds =
      PartitionSequence::constant(Partition::uniform(3, "t"));

  MisiurewiczCertificate cert =
      nds::misiurewicz_certificate(mus, thirds, q(1, 100), 512, budget);
  CHECK(cert.pass);
  CHECK(cert.fail_n == -1);
  REQUIRE(cert.checkpoints.size() == 513);
  // The binding time is n = 0 (uniform density): each cell sheds 1/200 per
  // side, leaving gaps of exactly 1/100.
  CHECK(cert.delta == q(1, 100));
  CHECK(cert.checkpoints[0].cell_margins ==
        std::vector<Rational>{q(1, 200), q(1, 200), q(1, 200)});
  CHECK(cert.checkpoints[0].gap == q(1, 100));
  // After the third halving (time 17) the density is 8,2,1/2 on the left
  // thirds of [0,1/3) and 1/8 on [1/3,1]: the spiked cell tightens to
  // margin 2/17 * 1/100 while the flat cells widen to 1/25.
  CHECK(cert.checkpoints[17].cell_margins ==
        std::vector<Rational>{q(1, 850), q(1, 25), q(1, 25)});
  CHECK(cert.checkpoints[17].gap == q(7, 170));

  // Re-verify a sampled checkpoint from scratch: mass defect of each shrunk
  // core stays within eps.
  const PwConstMeasure& mu17 = mus.at(17, budget);
  const Partition& P = thirds.at(17);
  for (std::size_t c = 0; c < P.size(); ++c) {
    Rational margin = cert.checkpoints[17].cell_margins[c];
    Rational lost(0);
    for (const auto& comp : P.cells()[c].set.components()) {
      lost += mu17.mass(comp) -
              mu17.mass(Interval::closed(comp.lo + margin, comp.hi - margin));
    }
    CHECK(lost <= q(1, 100));
  }
}

TEST_CASE("doubling with halves: constant gaps across the horizon") {
  Budget budget;
  auto sys = constant_system(doubling_map());
  MeasureSequence mus(sys, PwConstMeasure::lebesgue());
  PartitionSequence halves =
      PartitionSequence::constant(Partition::uniform(2, "h"));
  MisiurewiczCertificate cert =
      nds::misiurewicz_certificate(mus, halves, q(1, 100), 30, budget);
  CHECK(cert.pass);
  CHECK(cert.delta == q(1, 100));
  for (const auto& cp : cert.checkpoints) {
    CHECK(cp.has_gap);
    CHECK(cp.gap == q(1, 100));
  }
}

TEST_CASE("digit partitions on the identity map: gaps halve every step") {
  Budget budget;
  auto sys = constant_system(nds::PwAffineMap::identity());
  MeasureSequence mus(sys, PwConstMeasure::lebesgue());
  PartitionSequence digits = PartitionSequence::programmatic(
      "digits",
      [](long long n) { return Partition::binary_digit(static_cast<int>(n)); },
      2);
  MisiurewiczCertificate cert =
      nds::misiurewicz_certificate(mus, digits, q(1, 100), 10, budget);
  CHECK_FALSE(cert.pass);
  CHECK(cert.fail_n == 10);
  CHECK(cert.reason.find("decay") != std::string::npos);
  CHECK(cert.fail_cells.find("b10") != std::string::npos);
  // Margins and gaps at depth n: eps/2^(n+1) per side, eps/2^n between cores.
  CHECK(cert.checkpoints[3].cell_margins ==
        std::vector<Rational>{q(1, 1600), q(1, 1600)});
  CHECK(cert.checkpoints[3].gap == q(1, 800));
  CHECK(cert.checkpoints[10].gap == q(1, 102400));
}

TEST_CASE("a boundary atom breaks every compact core") {
  Budget budget;
  auto sys = constant_system(nds::PwAffineMap::identity());
  // Half the mass sits exactly at 0: any positive shrink of [0,1/2) drops it.
  PwConstMeasure mu0({{q(1, 2), q(1), q(1)}}, {{q(0), q(1, 2)}});
  MeasureSequence mus(sys, mu0);
  PartitionSequence halves =
      PartitionSequence::constant(Partition::uniform(2, "h"));
  MisiurewiczCertificate cert =
      nds::misiurewicz_certificate(mus, halves, q(1, 100), 3, budget);
  CHECK_FALSE(cert.pass);
  CHECK(cert.fail_n == 0);
  CHECK(cert.fail_cells == "h0");
  CHECK(cert.reason.find("no compact core") != std::string::npos);
  CHECK(cert.delta == q(0));
}

TEST_CASE("single-cell partitions pass vacuously") {
  Budget budget;
  auto sys = constant_system(doubling_map());
  MeasureSequence mus(sys, PwConstMeasure::lebesgue());
  PartitionSequence whole =
      PartitionSequence::constant(Partition::uniform(1, "w"));
  MisiurewiczCertificate cert =
      nds::misiurewicz_certificate(mus, whole, q(1, 100), 5, budget);
  CHECK(cert.pass);
  for (const auto& cp : cert.checkpoints) CHECK_FALSE(cp.has_gap);
}

TEST_CASE("parameter validation") {
  Budget budget;
  auto sys = constant_system(doubling_map());
  MeasureSequence mus(sys, PwConstMeasure::lebesgue());
  PartitionSequence halves =
      PartitionSequence::constant(Partition::uniform(2));
  CHECK_THROWS_AS(
      nds::misiurewicz_certificate(mus, halves, q(0), 5, budget),
      nds::UsageError);
  CHECK_THROWS_AS(
      nds::misiurewicz_certificate(mus, halves, q(1, 100), -1, budget),
      nds::UsageError);
}
