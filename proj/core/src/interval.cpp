#include "ndsent/interval.hpp"

#include <ostream>
#include <sstream>

#include "ndsent/errors.hpp"

namespace nds {

Interval::Interval(Rational lo_, Rational hi_, bool lc, bool hc)
    : lo(std::move(lo_)), hi(std::move(hi_)), lo_closed(lc), hi_closed(hc) {
  if (lo > hi) throw DomainError("interval with lo > hi: " + str());
  if (lo == hi && !(lo_closed && hi_closed)) {
    throw DomainError("degenerate interval must be closed: " + str());
  }
}

bool Interval::contains(const Rational& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

bool Interval::contains(const Interval& o) const {
  bool lo_ok = (lo < o.lo) || (lo == o.lo && (lo_closed || !o.lo_closed));
  bool hi_ok = (o.hi < hi) || (o.hi == hi && (hi_closed || !o.hi_closed));
  return lo_ok && hi_ok;
}

std::string Interval::str() const {
  std::ostringstream os;
  os << (lo_closed ? '[' : '(') << lo << ',' << hi << (hi_closed ? ']' : ')');
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << iv.str();
}

std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Rational lo;
  bool lc;
  if (a.lo > b.lo) {
    lo = a.lo;
    lc = a.lo_closed;
  } else if (b.lo > a.lo) {
    lo = b.lo;
    lc = b.lo_closed;
  } else {
    lo = a.lo;
    lc = a.lo_closed && b.lo_closed;
  }
  Rational hi;
  bool hc;
  if (a.hi < b.hi) {
    hi = a.hi;
    hc = a.hi_closed;
  } else if (b.hi < a.hi) {
    hi = b.hi;
    hc = b.hi_closed;
  } else {
    hi = a.hi;
    hc = a.hi_closed && b.hi_closed;
  }
  if (lo > hi) return std::nullopt;
  if (lo == hi && !(lc && hc)) return std::nullopt;
  return Interval{std::move(lo), std::move(hi), lc, hc};
}

bool mergeable(const Interval& a, const Interval& b) {
  const Interval& first = (a.lo <= b.lo) ? a : b;
  const Interval& second = (a.lo <= b.lo) ? b : a;
  if (second.lo < first.hi) return true;
  if (second.lo == first.hi) {
    return first.hi_closed || second.lo_closed;
  }
  return false;
}

Interval affine_image(const Interval& iv, const Rational& q, const Rational& r) {
  if (q.is_zero()) return Interval::point(r);
  Rational a = q * iv.lo + r;
  Rational b = q * iv.hi + r;
  if (q.sign() > 0) {
    return Interval{std::move(a), std::move(b), iv.lo_closed, iv.hi_closed};
  }
  return Interval{std::move(b), std::move(a), iv.hi_closed, iv.lo_closed};
}

}  // namespace nds
