#include "ndsent/interval_set.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "ndsent/errors.hpp"

namespace nds {

namespace {

// Orders right endpoints: (hi, open) precedes (hi, closed).
bool end_before(const Rational& h1, bool c1, const Rational& h2, bool c2) {
  if (h1 != h2) return h1 < h2;
  return !c1 && c2;
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> comps) : comps_(std::move(comps)) {
  normalize();
}

void IntervalSet::normalize() {
  if (comps_.empty()) return;
  std::sort(comps_.begin(), comps_.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    if (a.lo_closed != b.lo_closed) return a.lo_closed;  // closed start first
    return end_before(a.hi, a.hi_closed, b.hi, b.hi_closed);
  });
  std::vector<Interval> out;
  out.reserve(comps_.size());
  out.push_back(comps_.front());
  for (std::size_t i = 1; i < comps_.size(); ++i) {
    Interval& cur = out.back();
    const Interval& nxt = comps_[i];
    if (mergeable(cur, nxt)) {
      if (end_before(cur.hi, cur.hi_closed, nxt.hi, nxt.hi_closed)) {
        cur.hi = nxt.hi;
        cur.hi_closed = nxt.hi_closed;
      }
      if (nxt.lo == cur.lo && nxt.lo_closed) cur.lo_closed = true;
    } else {
      out.push_back(nxt);
    }
  }
  comps_ = std::move(out);
}

Rational IntervalSet::measure() const {
  Rational m = 0;
  for (const auto& c : comps_) m += c.length();
  return m;
}

bool IntervalSet::contains(const Rational& x) const {
  if (comps_.empty()) return false;
  auto it = std::upper_bound(
      comps_.begin(), comps_.end(), x,
      [](const Rational& v, const Interval& iv) { return v < iv.lo; });
  // Candidate is the last component with lo <= x; a touching neighbour to the
  // left may also hold x when the candidate's start is open.
  if (it != comps_.begin()) {
    auto cand = std::prev(it);
    if (cand->contains(x)) return true;
    if (cand != comps_.begin() && std::prev(cand)->contains(x)) return true;
  }
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
  std::vector<Interval> all = comps_;
  all.insert(all.end(), o.comps_.begin(), o.comps_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
  // When one side is much smaller, locate each of its components in the
  // larger side by binary search instead of sweeping everything; otherwise
  // fall back to the linear two-pointer merge.  This keeps the cost near
  // O(small * (log large + overlap)), which matters when partitions with
  // thousands of components are refined cell by cell.
  const IntervalSet* small = this;
  const IntervalSet* large = &o;
  if (small->comps_.size() > large->comps_.size()) std::swap(small, large);
  std::vector<Interval> out;
  if ((small->comps_.size() + 1) * 8 < large->comps_.size()) {
    for (const auto& c : small->comps_) {
      // First component of `large` whose hi does not end before c.lo.
      auto it = std::lower_bound(
          large->comps_.begin(), large->comps_.end(), c,
          [](const Interval& a, const Interval& b) {
            // True when a lies entirely left of b with no shared point.
            return a.hi < b.lo ||
                   (a.hi == b.lo && !(a.hi_closed && b.lo_closed));
          });
      for (; it != large->comps_.end() && it->lo <= c.hi; ++it) {
        if (auto iv = nds::intersect(c, *it)) out.push_back(*iv);
      }
    }
    return IntervalSet(std::move(out));
  }
  std::size_t i = 0, j = 0;
  while (i < comps_.size() && j < o.comps_.size()) {
    if (auto iv = nds::intersect(comps_[i], o.comps_[j])) out.push_back(*iv);
    // Advance whichever component ends first.
    if (end_before(comps_[i].hi, comps_[i].hi_closed, o.comps_[j].hi,
                   o.comps_[j].hi_closed)) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::intersect(const Interval& iv) const {
  return intersect(IntervalSet(iv));
}

IntervalSet IntervalSet::complement(const Interval& domain) const {
  IntervalSet clipped = intersect(IntervalSet(domain));
  std::vector<Interval> out;
  Rational pos = domain.lo;
  bool pos_closed = domain.lo_closed;
  for (const auto& c : clipped.comps_) {
    // Gap from the cursor up to c.lo.
    if (pos < c.lo || (pos == c.lo && pos_closed && !c.lo_closed)) {
      out.emplace_back(pos, c.lo, pos_closed, !c.lo_closed);
    }
    pos = c.hi;
    pos_closed = !c.hi_closed;
  }
  if (pos < domain.hi || (pos == domain.hi && pos_closed && domain.hi_closed)) {
    out.emplace_back(pos, domain.hi, pos_closed, domain.hi_closed);
  }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::setminus(const IntervalSet& o) const {
  if (comps_.empty()) return {};
  Rational lo = comps_.front().lo;
  Rational hi = comps_.back().hi;
  for (const auto& c : o.comps_) {
    lo = min(lo, c.lo);
    hi = max(hi, c.hi);
  }
  return intersect(o.complement(Interval::closed(lo, hi)));
}

IntervalSet IntervalSet::symmetric_difference(const IntervalSet& o) const {
  return setminus(o).unite(o.setminus(*this));
}

bool IntervalSet::subset_of(const IntervalSet& o) const {
  // Each component of a canonical set is connected, so it must fit inside a
  // single component of o.
  std::size_t j = 0;
  for (const auto& c : comps_) {
    bool ok = false;
    while (j < o.comps_.size()) {
      if (o.comps_[j].contains(c)) {
        ok = true;
        break;
      }
      if (end_before(o.comps_[j].hi, o.comps_[j].hi_closed, c.hi, c.hi_closed)) {
        ++j;
      } else {
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

bool IntervalSet::is_finite_point_set() const {
  for (const auto& c : comps_) {
    if (!c.is_point()) return false;
  }
  return true;
}

bool IntervalSet::equals_mod_null(const IntervalSet& o) const {
  return symmetric_difference(o).is_finite_point_set();
}

std::string IntervalSet::str() const {
  if (comps_.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) os << " u ";
    os << comps_[i];
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
  return os << s.str();
}

}  // namespace nds
