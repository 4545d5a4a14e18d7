#include "ndsent/orbit_diagnostics.hpp"

#include "ndsent/errors.hpp"
#include "ndsent/interval_set.hpp"

namespace nds {

namespace {

struct HalvingZigzag {
  const PwAffineMap* halving;  // on-map
  const PwAffineMap* zigzag;   // off-map
  const IndexSequence* steps;  // on-step indices
};

// Exact structural verification of everything the scan exploits.
HalvingZigzag verified_structure(const NDSystem& sys, Budget& budget) {
  if (sys.is_power() ||
      sys.schedule().kind() != SystemSchedule::Kind::index_set)
    throw UsageError("orbit scan requires an index-set schedule");
  const PwAffineMap& f = sys.maps().at(sys.schedule().on_map()).map;
  const PwAffineMap& g = sys.maps().at(sys.schedule().off_map()).map;
  const Rational third(1, 3), two_thirds(2, 3);

  for (std::size_t j = 0; j < f.piece_count(); ++j) {
    const Interval d = f.piece_domain(j);
    const auto& p = f.pieces()[j];
    if (d.hi <= two_thirds) {
      if (!(p.slope == Rational(1, 2) && p.intercept.sign() == 0))
        throw UsageError("orbit scan: on-map must halve below 2/3");
    } else if (d.lo >= two_thirds) {
      if (!(p.slope == Rational(2) && p.intercept == Rational(-1)))
        throw UsageError("orbit scan: on-map must be 2x-1 on [2/3,1]");
    } else {
      throw UsageError("orbit scan: on-map piece straddles 2/3");
    }
  }
  for (std::size_t j = 0; j < g.piece_count(); ++j) {
    const Interval d = g.piece_domain(j);
    const auto& p = g.pieces()[j];
    const bool outer = d.hi <= third || d.lo >= two_thirds;
    if (outer) {
      if (!(p.slope == Rational(1) && p.intercept.sign() == 0))
        throw UsageError(
            "orbit scan: off-map must fix everything outside the middle "
            "third");
    } else if (!(d.lo >= third && d.hi <= two_thirds)) {
      throw UsageError("orbit scan: off-map piece straddles the middle third");
    }
  }
  if (!(g(third) == third && g(two_thirds) == two_thirds))
    throw UsageError("orbit scan: off-map must fix 1/3 and 2/3");
  const Interval middle = Interval::closed(third, two_thirds);
  if (!IntervalSet(middle).subset_of(g.preimage(middle, budget)))
    throw UsageError(
        "orbit scan: off-map must map the middle third into itself");
  return {&f, &g, &sys.schedule().sequence()};
}

// Index k with term(k) == value (value is known to be a term).
std::size_t term_index_of(const IndexSequence& seq, const Integer& value) {
  for (std::size_t k = 0;; ++k)
    if (seq.term(k) >= value) return k;
}

OrbitFate simulate(const HalvingZigzag& bo, Rational x, const Integer& horizon,
                   const Rational& cut, Budget& budget) {
  const Rational third(1, 3), two_thirds(2, 3), sixth(1, 6), two(2);
  OrbitFate fate;
  fate.start = x;
  Integer t(0);

  // Exact phase: between halving steps, zigzag blocks fix every position
  // outside the open middle third, so the position changes only at halving
  // steps; blocks are skipped in one piece.
  for (int guard = 0; guard < 4096; ++guard) {
    budget.charge(1);
    if (x < cut) {
      fate.exact_entry_time = t;
      fate.entered_within_horizon = (t <= horizon);
      fate.stays_after_entry = true;
      return fate;
    }
    auto next_on = bo.steps->next_member_geq(t);
    if (!next_on)
      throw DomainError("orbit scan: on-step sequence ended unexpectedly");
    Integer m = *next_on;
    if (m > t && x > third && x < two_thirds) {
      // A zigzag step acts inside the open middle third: switch from the
      // exact position to a certified window.  The orbit stays inside
      // [1/3,2/3] until the halving step m, which maps that interval into
      // [1/6,1/3]; every later block fixes the window and every later
      // halving halves it.
      fate.visited_expanding_region = true;
      std::size_t k = term_index_of(*bo.steps, m);
      Rational lo = sixth, hi = third;
      Integer wt = Integer(m + 1);  // time the window [lo,hi] is reached
      for (int guard2 = 0; guard2 < 1 << 20; ++guard2) {
        budget.charge(1);
        if (!fate.entry_possible_from && lo < cut)
          fate.entry_possible_from = wt;
        if (hi < cut) {
          fate.entry_guaranteed_by = wt;
          break;
        }
        ++k;
        lo = lo / two;
        hi = hi / two;
        wt = Integer(bo.steps->term(k) + 1);
      }
      if (!fate.entry_guaranteed_by)
        throw DomainError("orbit scan: window tail failed to reach the cut");
      fate.stays_after_entry = true;
      if (*fate.entry_possible_from > horizon)
        fate.entered_within_horizon = false;
      else if (*fate.entry_guaranteed_by <= horizon)
        fate.entered_within_horizon = true;
      // Otherwise the verdict stays unknown: the window straddles the cut
      // at the horizon.
      return fate;
    }
    // Position is fixed through the block [t, m); apply the halving step.
    x = (*bo.halving)(x);
    t = Integer(m + 1);
  }
  throw DomainError("orbit scan: exact phase failed to terminate");
}

}  // namespace

OrbitConvergenceReport orbit_convergence_scan(const NDSystem& sys,
                                              std::size_t grid_points,
                                              const Integer& horizon,
                                              const Rational& cut,
                                              Budget& budget) {
  if (grid_points == 0) throw UsageError("orbit scan needs a nonempty grid");
  if (horizon < 0) throw UsageError("orbit scan horizon must be >= 0");
  if (!(cut > Rational(0)) || cut > Rational(1, 3))
    throw UsageError("orbit scan cut must lie in (0, 1/3]");
  HalvingZigzag bo = verified_structure(sys, budget);

  OrbitConvergenceReport rep;
  rep.grid_points = grid_points;
  rep.horizon = horizon;
  rep.cut = cut;
  rep.rows.reserve(grid_points);
  rep.all_provably_enter = true;
  for (std::size_t j = 0; j < grid_points; ++j) {
    OrbitFate fate = simulate(
        bo, Rational(static_cast<long long>(j),
                     static_cast<long long>(grid_points)),
        horizon, cut, budget);
    if (fate.entered_within_horizon.value_or(false))
      ++rep.entered_within_horizon;
    if (!fate.entered_within_horizon) ++rep.horizon_verdict_unknown;
    if (fate.visited_expanding_region) ++rep.region_visitors;
    if (!fate.exact_entry_time && !fate.entry_guaranteed_by)
      rep.all_provably_enter = false;
    rep.rows.push_back(std::move(fate));
  }
  return rep;
}

}  // namespace nds
