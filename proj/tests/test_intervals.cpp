#include <vector>

#include "doctest.h"
#include "ndsent/errors.hpp"
#include "ndsent/interval_set.hpp"

using nds::Interval;
using nds::IntervalSet;
using nds::Rational;

namespace {
Rational r(long long n, long long d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("interval basics") {
  auto iv = Interval::half_open(r(1, 3), r(2, 3));
  CHECK(iv.contains(r(1, 3)));
  CHECK(!iv.contains(r(2, 3)));
  CHECK(iv.contains(r(1, 2)));
  CHECK(iv.length() == r(1, 3));
  CHECK_THROWS_AS(Interval::closed(r(1, 2), r(1, 3)), nds::DomainError);
  CHECK_THROWS_AS(Interval::open(r(1, 2), r(1, 2)), nds::DomainError);
  CHECK(Interval::point(r(1, 2)).contains(r(1, 2)));
}

TEST_CASE("interval intersection respects closedness") {
  auto a = Interval::half_open(r(0), r(1, 2));
  auto b = Interval::half_open(r(1, 2), r(1));
  CHECK(!nds::intersect(a, b).has_value());

  auto c = Interval::closed(r(0), r(1, 2));
  auto got = nds::intersect(c, b);
  REQUIRE(got.has_value());
  CHECK(got->is_point());
  CHECK(got->lo == r(1, 2));

  auto o1 = Interval::open(r(0), r(1, 2));
  auto o2 = Interval::open(r(1, 4), r(3, 4));
  auto mid = nds::intersect(o1, o2);
  REQUIRE(mid.has_value());
  CHECK(*mid == Interval::open(r(1, 4), r(1, 2)));
}

TEST_CASE("affine image flips under negative slope") {
  auto iv = Interval::half_open(r(1, 3), r(2, 3));
  auto img = nds::affine_image(iv, r(-3), r(2));
  // -3x+2 maps [1/3,2/3) to (0,1].
  CHECK(img == Interval{r(0), r(1), false, true});
  auto pt = nds::affine_image(iv, r(0), r(1, 4));
  CHECK(pt == Interval::point(r(1, 4)));
}

TEST_CASE("interval set canonicalization merges") {
  IntervalSet s({Interval::half_open(r(0), r(1, 2)),
                 Interval::half_open(r(1, 2), r(1))});
  CHECK(s.component_count() == 1);
  CHECK(s.components()[0] == Interval::half_open(r(0), r(1)));

  // Open-open touch does not merge: the shared point is missing.
  IntervalSet t({Interval::open(r(0), r(1, 2)), Interval::open(r(1, 2), r(1))});
  CHECK(t.component_count() == 2);

  // Adding the point stitches everything together.
  IntervalSet u = t.unite(IntervalSet(Interval::point(r(1, 2))));
  CHECK(u.component_count() == 1);
  CHECK(u.components()[0] == Interval::open(r(0), r(1)));

  // Overlap with containment.
  IntervalSet v({Interval::closed(r(0), r(1)), Interval::open(r(1, 4), r(1, 2))});
  CHECK(v.component_count() == 1);
  CHECK(v.measure() == r(1));
}

TEST_CASE("measure adds component lengths") {
  IntervalSet s({Interval::half_open(r(0), r(1, 3)),
                 Interval::half_open(r(2, 3), r(5, 6))});
  CHECK(s.measure() == r(1, 2));
  CHECK(IntervalSet().measure() == r(0));
}

TEST_CASE("contains handles touching components") {
  IntervalSet s({Interval::closed(r(0), r(1, 2)), Interval::open(r(1, 2), r(1))});
  CHECK(s.component_count() == 1);  // mergeable: [0,1/2] ∪ (1/2,1) = [0,1)
  IntervalSet t({Interval::half_open(r(0), r(1, 2)), Interval::open(r(1, 2), r(1))});
  CHECK(t.component_count() == 2);
  CHECK(!t.contains(r(1, 2)));
  CHECK(t.contains(r(1, 4)));
  CHECK(t.contains(r(3, 4)));
  CHECK(!t.contains(r(1)));
}

TEST_CASE("complement flips closedness") {
  IntervalSet s(Interval::half_open(r(1, 3), r(2, 3)));
  auto c = s.complement();
  REQUIRE(c.component_count() == 2);
  CHECK(c.components()[0] == Interval{r(0), r(1, 3), true, false});
  CHECK(c.components()[1] == Interval{r(2, 3), r(1), true, true});

  // Complement of a point set.
  auto pc = IntervalSet(Interval::point(r(1, 2))).complement();
  REQUIRE(pc.component_count() == 2);
  CHECK(pc.components()[0] == Interval{r(0), r(1, 2), true, false});
  CHECK(pc.components()[1] == Interval{r(1, 2), r(1), false, true});

  // Double complement is the identity on canonical sets.
  CHECK(pc.complement() == IntervalSet(Interval::point(r(1, 2))));
}

TEST_CASE("setminus and symmetric difference") {
  IntervalSet a(Interval::half_open(r(0), r(2, 3)));
  IntervalSet b(Interval::half_open(r(1, 3), r(1)));
  CHECK(a.setminus(b) == IntervalSet(Interval::half_open(r(0), r(1, 3))));
  CHECK(b.setminus(a) == IntervalSet(Interval::half_open(r(2, 3), r(1))));
  auto sym = a.symmetric_difference(b);
  CHECK(sym.measure() == r(2, 3));
}

TEST_CASE("mod-null equality ignores finite point sets") {
  IntervalSet a(Interval::half_open(r(0), r(1, 2)));
  IntervalSet b(Interval::closed(r(0), r(1, 2)));
  IntervalSet c(Interval::open(r(0), r(1, 2)));
  CHECK(a.equals_mod_null(b));
  CHECK(a.equals_mod_null(c));
  CHECK(!(a == b));

  IntervalSet d(Interval::half_open(r(0), r(1, 4)));
  CHECK(!a.equals_mod_null(d));

  // Scarred cell: same interval with an interior point removed.
  IntervalSet scar =
      a.setminus(IntervalSet(Interval::point(r(1, 3))));
  CHECK(scar.component_count() == 2);
  CHECK(scar.equals_mod_null(a));
}

TEST_CASE("subset queries are pointwise") {
  IntervalSet a(Interval::open(r(1, 4), r(1, 2)));
  IntervalSet big(Interval::closed(r(0), r(1)));
  CHECK(a.subset_of(big));
  CHECK(!big.subset_of(a));

  IntervalSet halves({Interval::half_open(r(0), r(1, 2)),
                      Interval::open(r(1, 2), r(1))});
  // Interval straddling the missing point 1/2 is not contained.
  IntervalSet straddle(Interval::closed(r(1, 3), r(2, 3)));
  CHECK(!straddle.subset_of(halves));
  IntervalSet inside(Interval::closed(r(0), r(1, 4)));
  CHECK(inside.subset_of(halves));
}

TEST_CASE("finite point set detection") {
  IntervalSet pts({Interval::point(r(1, 3)), Interval::point(r(2, 3))});
  CHECK(pts.is_finite_point_set());
  CHECK(IntervalSet().is_finite_point_set());
  CHECK(!IntervalSet(Interval::open(r(0), r(1, 100))).is_finite_point_set());
}
