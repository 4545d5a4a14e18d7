#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ndsent/interval.hpp"

namespace nds {

// Finite union of subintervals of [0,1] in canonical form: components are
// sorted, pairwise disjoint, and maximally merged (no two components whose
// union would again be an interval).  All set operations are exact and
// pointwise; the measure-theoretic (mod null) comparisons are separate and
// explicit.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval iv) : comps_{std::move(iv)} {}
  explicit IntervalSet(std::vector<Interval> comps);

  static IntervalSet unit() { return IntervalSet(Interval::unit()); }
  static IntervalSet empty() { return IntervalSet(); }

  const std::vector<Interval>& components() const { return comps_; }
  std::size_t component_count() const { return comps_.size(); }
  bool is_empty() const { return comps_.empty(); }

  // Lebesgue measure (sum of component lengths).
  Rational measure() const;

  bool contains(const Rational& x) const;

  IntervalSet unite(const IntervalSet& o) const;
  IntervalSet intersect(const IntervalSet& o) const;
  IntervalSet intersect(const Interval& iv) const;
  // Complement within a domain interval (default the unit interval).
  IntervalSet complement(const Interval& domain = Interval::unit()) const;
  IntervalSet setminus(const IntervalSet& o) const;
  IntervalSet symmetric_difference(const IntervalSet& o) const;

  // Exact pointwise subset / equality.
  bool subset_of(const IntervalSet& o) const;
  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.comps_ == b.comps_;
  }

  // True when the set is a finite collection of points (or empty).
  bool is_finite_point_set() const;

  // Equality up to a finite set of points: the symmetric difference is a
  // finite point set.  This is the comparison used for partition cells,
  // which are mod-null objects.
  bool equals_mod_null(const IntervalSet& o) const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const IntervalSet& s);

 private:
  void normalize();
  std::vector<Interval> comps_;
};

}  // namespace nds
