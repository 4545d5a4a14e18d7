#include <vector>

#include "doctest.h"
#include "ndsent/errors.hpp"
#include "ndsent/pw_affine.hpp"
#include "support/test_maps.hpp"

using namespace ndtest;
using nds::Budget;
using nds::Interval;
using nds::IntervalSet;
using nds::PwAffineMap;

namespace {

// Rational probe grid: all breakpoints of m, midpoints between consecutive
// breakpoints, and a fixed lattice.
std::vector<Rational> probe_points(const PwAffineMap& m) {
  std::vector<Rational> pts = m.breakpoints();
  for (std::size_t i = 0; i + 1 < m.breakpoints().size(); ++i) {
    pts.push_back((m.breakpoints()[i] + m.breakpoints()[i + 1]) / q(2));
  }
  for (int k = 0; k <= 60; ++k) pts.push_back(q(k, 60));
  return pts;
}

}  // namespace

TEST_CASE("construction validation") {
  CHECK_THROWS_AS(PwAffineMap({q(0), q(1)}, {}), nds::DomainError);
  CHECK_THROWS_AS(PwAffineMap({q(0), q(1, 2)}, {{q(1), q(0)}}), nds::DomainError);
  CHECK_THROWS_AS(PwAffineMap({q(0), q(1, 2), q(1, 2), q(1)},
                              {{q(1), q(0)}, {q(1), q(0)}, {q(1), q(0)}}),
                  nds::DomainError);
  // Image escapes above 1.
  CHECK_THROWS_AS(PwAffineMap({q(0), q(1)}, {{q(2), q(0)}}), nds::DomainError);
  // Image touching 1 only as an unattained limit is fine.
  CHECK_NOTHROW(PwAffineMap({q(0), q(1, 2), q(1)},
                            {{q(2), q(0)}, {q(2), q(-1)}}));
}

TEST_CASE("evaluation follows the half-open convention") {
  auto d = doubling_map();
  CHECK(d(q(0)) == q(0));
  CHECK(d(q(1, 4)) == q(1, 2));
  CHECK(d(q(1, 2)) == q(0));  // second piece starts at 1/2
  CHECK(d(q(3, 4)) == q(1, 2));
  CHECK(d(q(1)) == q(1));
  CHECK_THROWS_AS(d(q(-1, 10)), nds::DomainError);
  CHECK_THROWS_AS(d(q(11, 10)), nds::DomainError);

  auto g = middle_zigzag_map();
  CHECK(g(q(2, 5)) == q(8, 15));
  CHECK(g(q(1, 2)) == q(1, 2));
  CHECK(g(q(1, 3)) == q(1, 3));
  CHECK(g(q(4, 9)) == q(2, 3));
  CHECK(g(q(5, 9)) == q(1, 3));
  CHECK(g(q(1, 10)) == q(1, 10));
  CHECK(g(q(9, 10)) == q(9, 10));
  CHECK(g(q(1)) == q(1));

  auto f = slow_fast_map();
  CHECK(f(q(1, 2)) == q(1, 4));
  CHECK(f(q(2, 3)) == q(1, 3));
  CHECK(f(q(5, 6)) == q(2, 3));
  CHECK(f(q(1)) == q(1));
}

TEST_CASE("continuity checks") {
  CHECK(middle_zigzag_map().continuous());
  CHECK(tent_map().continuous());
  CHECK(slow_fast_map().continuous());
  CHECK(!doubling_map().continuous());
  CHECK(doubling_map().continuous_mod1());
  CHECK(rotation_map(q(1, 3)).continuous_mod1());
  CHECK(!rotation_map(q(1, 3)).continuous());
  CHECK(expanding_circle_map(3).continuous_mod1());
}

TEST_CASE("max_abs_slope") {
  CHECK(middle_zigzag_map().max_abs_slope() == q(3));
  CHECK(slow_fast_map().max_abs_slope() == q(2));
  CHECK(tent_map().max_abs_slope() == q(2));
  CHECK(PwAffineMap::identity().max_abs_slope() == q(1));
}

TEST_CASE("composition matches pointwise evaluation") {
  Budget budget;
  auto cases = std::vector<std::pair<PwAffineMap, PwAffineMap>>{
      {doubling_map(), doubling_map()},
      {tent_map(), tent_map()},
      {slow_fast_map(), middle_zigzag_map()},
      {middle_zigzag_map(), slow_fast_map()},
      {rotation_map(q(1, 3)), doubling_map()},
      {middle_zigzag_map(), middle_zigzag_map()},
      {PwAffineMap::identity(), tent_map()},
  };
  for (const auto& [outer, inner] : cases) {
    CAPTURE(outer.str());
    CAPTURE(inner.str());
    auto comp = outer.compose_after(inner, budget);
    for (const auto& x : probe_points(comp)) {
      CAPTURE(x.str());
      CHECK(comp(x) == outer(inner(x)));
    }
  }
}

TEST_CASE("doubling squared has four slope-4 pieces") {
  Budget budget;
  auto d2 = doubling_map().compose_after(doubling_map(), budget);
  CHECK(d2.piece_count() == 4);
  for (const auto& p : d2.pieces()) CHECK(p.slope == q(4));
}

TEST_CASE("identity composition is neutral") {
  Budget budget;
  auto g = middle_zigzag_map();
  CHECK(g.compose_after(PwAffineMap::identity(), budget) == g);
  CHECK(PwAffineMap::identity().compose_after(g, budget) == g);
}

TEST_CASE("unrepresentable composite is rejected") {
  // A decreasing piece feeding the doubling discontinuity produces a
  // left-continuous jump that the left-closed convention cannot encode.
  Budget budget;
  CHECK_THROWS_AS(doubling_map().compose_after(tent_map(), budget),
                  nds::DomainError);
}

TEST_CASE("preimage oracles for the two-map pair") {
  Budget budget;
  auto f = slow_fast_map();
  auto g = middle_zigzag_map();
  Interval middle = Interval::half_open(q(1, 3), q(2, 3));

  auto pf = f.preimage(middle, budget);
  CHECK(pf == IntervalSet(Interval::half_open(q(2, 3), q(5, 6))));

  auto pg = g.preimage(middle, budget);
  REQUIRE(pg.component_count() == 2);
  CHECK(pg.components()[0] == Interval::half_open(q(1, 3), q(4, 9)));
  CHECK(pg.components()[1] == Interval::open(q(4, 9), q(2, 3)));
  CHECK(pg.equals_mod_null(IntervalSet(middle)));

  auto pg_top = g.preimage(Interval::closed(q(2, 3), q(1)), budget);
  REQUIRE(pg_top.component_count() == 2);
  CHECK(pg_top.components()[0] == Interval::point(q(4, 9)));
  CHECK(pg_top.components()[1] == Interval::closed(q(2, 3), q(1)));

  auto pg_low = g.preimage(Interval::half_open(q(0), q(1, 3)), budget);
  CHECK(pg_low == IntervalSet(Interval::half_open(q(0), q(1, 3))));
}

TEST_CASE("preimage adjunction holds pointwise") {
  Budget budget;
  auto targets = std::vector<IntervalSet>{
      IntervalSet(Interval::half_open(q(1, 3), q(2, 3))),
      IntervalSet(Interval::open(q(1, 4), q(3, 4))),
      IntervalSet(Interval::closed(q(1, 2), q(1, 2))),
      IntervalSet({Interval::half_open(q(0), q(1, 6)),
                   Interval::closed(q(5, 6), q(1))}),
      IntervalSet(Interval::closed(q(0), q(1))),
      IntervalSet(),
  };
  for (const auto& m : {slow_fast_map(), middle_zigzag_map(), doubling_map(),
                        tent_map(), rotation_map(q(2, 7))}) {
    CAPTURE(m.str());
    for (const auto& t : targets) {
      CAPTURE(t.str());
      auto pre = m.preimage(t, budget);
      // Probe: map breakpoints, preimage endpoints, midpoints, lattice.
      std::vector<Rational> pts = probe_points(m);
      for (const auto& c : pre.components()) {
        pts.push_back(c.lo);
        pts.push_back(c.hi);
        pts.push_back((c.lo + c.hi) / q(2));
      }
      for (const auto& x : pts) {
        if (x < q(0) || x > q(1)) continue;
        CAPTURE(x.str());
        CHECK(pre.contains(x) == t.contains(m(x)));
      }
    }
  }
}

TEST_CASE("preimage measure bookkeeping") {
  // For maps with nowhere-zero slope: λ(m^{-1}(T)) = Σ_j λ(T ∩ image_j)/|s_j|.
  Budget budget;
  auto targets = std::vector<IntervalSet>{
      IntervalSet(Interval::half_open(q(1, 3), q(2, 3))),
      IntervalSet(Interval::open(q(1, 10), q(9, 10))),
      IntervalSet({Interval::half_open(q(0), q(1, 4)),
                   Interval::half_open(q(3, 4), q(1))}),
  };
  for (const auto& m : {slow_fast_map(), middle_zigzag_map(), doubling_map(),
                        tent_map()}) {
    CAPTURE(m.str());
    for (const auto& t : targets) {
      CAPTURE(t.str());
      Rational expected(0);
      for (std::size_t j = 0; j < m.piece_count(); ++j) {
        Interval img = nds::affine_image(m.piece_domain(j), m.pieces()[j].slope,
                                         m.pieces()[j].intercept);
        expected += t.intersect(img).measure() / m.pieces()[j].slope.abs();
      }
      CHECK(m.preimage(t, budget).measure() == expected);
    }
  }
}

TEST_CASE("budget exhaustion raises") {
  Budget tiny(3);
  auto g = middle_zigzag_map();
  CHECK_THROWS_AS(
      g.preimage(IntervalSet(Interval::half_open(q(1, 3), q(2, 3))), tiny),
      nds::BudgetError);
}
