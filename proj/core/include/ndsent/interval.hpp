#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ndsent/rational.hpp"

namespace nds {

// Subinterval of the unit interval with explicit endpoint closedness.
// Invariant: lo <= hi, and a degenerate interval (lo == hi) is the closed
// point [x,x].  Empty sets are represented by std::optional<Interval> /
// absence from an IntervalSet, never by a degenerate open interval.
struct Interval {
  Rational lo, hi;
  bool lo_closed = true;
  bool hi_closed = true;

  Interval() = default;
  Interval(Rational lo_, Rational hi_, bool lc, bool hc);

  static Interval closed(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, true}; }
  static Interval open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), false, false}; }
  // [lo, hi): the convention used by map pieces and measure density pieces.
  static Interval half_open(Rational lo, Rational hi) { return {std::move(lo), std::move(hi), true, false}; }
  static Interval point(Rational x) { Rational y = x; return {std::move(x), std::move(y), true, true}; }
  static Interval unit() { return closed(0, 1); }

  bool is_point() const { return lo == hi; }
  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const;

  // Set containment (exact, pointwise).
  bool contains(const Interval& other) const;

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed &&
           a.hi_closed == b.hi_closed;
  }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Interval& iv);
};

// Pointwise intersection; empty result -> nullopt.
std::optional<Interval> intersect(const Interval& a, const Interval& b);

// True if the union of a and b is again an interval (they overlap or touch
// at a shared endpoint that at least one of them contains).
bool mergeable(const Interval& a, const Interval& b);

// Affine image q*x + r of an interval (exact; flips ends for q < 0,
// collapses to a point for q == 0).
Interval affine_image(const Interval& iv, const Rational& q, const Rational& r);

}  // namespace nds
