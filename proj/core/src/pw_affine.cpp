#include "ndsent/pw_affine.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "ndsent/errors.hpp"

namespace nds {

PwAffineMap::PwAffineMap(std::vector<Rational> breakpoints,
                         std::vector<Piece> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size()) {
    throw DomainError("piecewise map needs k+1 breakpoints for k pieces");
  }
  if (breaks_.front() != Rational(0) || breaks_.back() != Rational(1)) {
    throw DomainError("breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
  // Image containment: per piece both endpoint values (attained or one-sided
  // limits) must lie in [0,1]; affine pieces then stay inside.
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    Rational va = value_on_piece(j, breaks_[j]);
    Rational vb = value_on_piece(j, breaks_[j + 1]);
    for (const Rational& v : {va, vb}) {
      if (v < Rational(0) || v > Rational(1)) {
        throw DomainError("map image escapes [0,1] on piece " +
                          std::to_string(j));
      }
    }
  }
}

PwAffineMap PwAffineMap::identity() {
  return PwAffineMap({Rational(0), Rational(1)}, {{Rational(1), Rational(0)}});
}

PwAffineMap PwAffineMap::affine(Rational slope, Rational intercept) {
  return PwAffineMap({Rational(0), Rational(1)},
                     {{std::move(slope), std::move(intercept)}});
}

Interval PwAffineMap::piece_domain(std::size_t j) const {
  bool last = (j + 1 == pieces_.size());
  return Interval{breaks_[j], breaks_[j + 1], true, last};
}

std::size_t PwAffineMap::piece_index(const Rational& x) const {
  if (x < Rational(0) || x > Rational(1)) {
    throw DomainError("point outside [0,1]: " + x.str());
  }
  if (x == Rational(1)) return pieces_.size() - 1;
  // Last breakpoint b_j with b_j <= x.
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return static_cast<std::size_t>(std::distance(breaks_.begin(), it)) - 1;
}

Rational PwAffineMap::operator()(const Rational& x) const {
  return value_on_piece(piece_index(x), x);
}

bool PwAffineMap::continuous() const {
  for (std::size_t j = 0; j + 1 < pieces_.size(); ++j) {
    if (value_on_piece(j, breaks_[j + 1]) != value_on_piece(j + 1, breaks_[j + 1])) {
      return false;
    }
  }
  return true;
}

bool PwAffineMap::continuous_mod1() const {
  for (std::size_t j = 0; j + 1 < pieces_.size(); ++j) {
    Rational left = value_on_piece(j, breaks_[j + 1]);
    Rational right = value_on_piece(j + 1, breaks_[j + 1]);
    Rational diff = left - right;
    if (diff != Rational(diff.floor())) return false;  // must differ by an integer
  }
  Rational wrap = value_on_piece(pieces_.size() - 1, Rational(1)) -
                  value_on_piece(0, Rational(0));
  return wrap == Rational(wrap.floor());
}

Rational PwAffineMap::max_abs_slope() const {
  Rational m = 0;
  for (const auto& p : pieces_) m = max(m, p.slope.abs());
  return m;
}

PwAffineMap PwAffineMap::compose_after(const PwAffineMap& inner,
                                       Budget& budget) const {
  // Composite breakpoints: inner's own, plus preimages of outer breakpoints
  // through each inner piece.
  std::vector<Rational> cuts = inner.breaks_;
  for (std::size_t j = 0; j < inner.pieces_.size(); ++j) {
    const auto& p = inner.pieces_[j];
    if (p.slope.is_zero()) continue;
    const Rational& lo = inner.breaks_[j];
    const Rational& hi = inner.breaks_[j + 1];
    for (std::size_t t = 1; t + 1 < breaks_.size(); ++t) {
      Rational x = (breaks_[t] - p.intercept) / p.slope;
      if (lo < x && x < hi) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  budget.charge(static_cast<std::int64_t>(cuts.size()));

  std::vector<Piece> out;
  out.reserve(cuts.size() - 1);
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const Rational& u = cuts[s];
    std::size_t ji = inner.piece_index(u);
    const auto& pi = inner.pieces_[ji];
    // Outer piece governing the interior of (u, cuts[s+1]): sample the
    // midpoint, which avoids landing exactly on an outer breakpoint.
    Rational mid = (u + cuts[s + 1]) / Rational(2);
    Rational wmid = pi.slope * mid + pi.intercept;
    std::size_t jo = piece_index(wmid);
    const auto& po = pieces_[jo];
    out.push_back(Piece{po.slope * pi.slope, po.slope * pi.intercept + po.intercept});
  }

  // Merge adjacent pieces carrying the identical affine formula.
  std::vector<Rational> mb{cuts.front()};
  std::vector<Piece> mp;
  for (std::size_t s = 0; s < out.size(); ++s) {
    if (!mp.empty() && mp.back() == out[s]) continue;
    if (!mp.empty()) mb.push_back(cuts[s]);
    mp.push_back(out[s]);
  }
  mb.push_back(cuts.back());

  PwAffineMap comp(std::move(mb), std::move(mp));

  // Pointwise validation at every composite breakpoint: the half-open piece
  // convention must reproduce outer(inner(x)) exactly.
  for (const Rational& b : comp.breaks_) {
    if (comp(b) != (*this)(inner(b))) {
      throw DomainError(
          "composite map not representable under the half-open piece "
          "convention (value mismatch at x=" + b.str() + ")");
    }
  }
  return comp;
}

IntervalSet PwAffineMap::preimage(const IntervalSet& target,
                                  Budget& budget) const {
  std::vector<Interval> out;
  budget.charge(static_cast<std::int64_t>(pieces_.size() *
                                          std::max<std::size_t>(1, target.component_count())));
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    Interval dom = piece_domain(j);
    const auto& p = pieces_[j];
    for (const Interval& t : target.components()) {
      if (p.slope.is_zero()) {
        if (t.contains(p.intercept)) out.push_back(dom);
        continue;
      }
      // Solve slope*x + intercept ∈ t exactly, preserving end closedness.
      Rational a = (t.lo - p.intercept) / p.slope;
      Rational b = (t.hi - p.intercept) / p.slope;
      Interval pre = (p.slope.sign() > 0)
                         ? Interval{a, b, t.lo_closed, t.hi_closed}
                         : Interval{b, a, t.hi_closed, t.lo_closed};
      if (auto got = intersect(pre, dom)) out.push_back(*got);
    }
  }
  IntervalSet result(std::move(out));
  budget.charge(static_cast<std::int64_t>(result.component_count()));
  return result;
}

IntervalSet PwAffineMap::preimage(const Interval& target, Budget& budget) const {
  return preimage(IntervalSet(target), budget);
}

std::string PwAffineMap::str() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < pieces_.size(); ++j) {
    if (j) os << "; ";
    os << piece_domain(j) << ": " << pieces_[j].slope << "*x";
    if (pieces_[j].intercept.sign() >= 0) os << "+";
    os << pieces_[j].intercept;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PwAffineMap& m) {
  return os << m.str();
}

}  // namespace nds
