#include "ndsent/measure.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>

#include "ndsent/errors.hpp"

namespace nds {

PwConstMeasure PwConstMeasure::lebesgue() {
  return PwConstMeasure({{Rational(0), Rational(1), Rational(1)}}, {});
}

PwConstMeasure PwConstMeasure::point_mass(Rational at) {
  return PwConstMeasure({}, {{std::move(at), Rational(1)}});
}

PwConstMeasure::PwConstMeasure(std::vector<DensityPiece> density,
                               std::vector<Atom> atoms)
    : density_(std::move(density)), atoms_(std::move(atoms)) {
  normalize_and_check();
}

void PwConstMeasure::normalize_and_check() {
  // Atoms: merge duplicates, drop zeros, validate.
  std::map<Rational, Rational> by_pos;
  for (auto& a : atoms_) {
    if (a.mass.sign() < 0) throw DomainError("negative atom mass");
    if (a.at < Rational(0) || a.at > Rational(1)) {
      throw DomainError("atom outside [0,1]");
    }
    by_pos[a.at] += a.mass;
  }
  atoms_.clear();
  for (auto& [at, mass] : by_pos) {
    if (!mass.is_zero()) atoms_.push_back({at, mass});
  }

  // Density: validate pieces, reject overlaps, merge equal neighbours.
  std::vector<DensityPiece> pieces;
  for (auto& d : density_) {
    if (d.height.sign() < 0) throw DomainError("negative density height");
    if (!(d.lo < d.hi)) throw DomainError("density piece with lo >= hi");
    if (d.lo < Rational(0) || d.hi > Rational(1)) {
      throw DomainError("density piece outside [0,1]");
    }
    if (!d.height.is_zero()) pieces.push_back(d);
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i + 1].lo < pieces[i].hi) {
      throw DomainError("overlapping density pieces");
    }
  }
  density_.clear();
  for (auto& p : pieces) {
    if (!density_.empty() && density_.back().hi == p.lo &&
        density_.back().height == p.height) {
      density_.back().hi = p.hi;
    } else {
      density_.push_back(p);
    }
  }

  if (total_mass() != Rational(1)) {
    throw DomainError("measure must have total mass 1, got " +
                      total_mass().str());
  }
}

Rational PwConstMeasure::total_mass() const {
  Rational m(0);
  for (const auto& d : density_) m += d.height * (d.hi - d.lo);
  for (const auto& a : atoms_) m += a.mass;
  return m;
}

Rational PwConstMeasure::mass(const Interval& iv) const {
  Rational m(0);
  for (const auto& d : density_) {
    Rational lo = max(d.lo, iv.lo);
    Rational hi = min(d.hi, iv.hi);
    if (lo < hi) m += d.height * (hi - lo);
  }
  for (const auto& a : atoms_) {
    if (iv.contains(a.at)) m += a.mass;
  }
  return m;
}

Rational PwConstMeasure::mass(const IntervalSet& s) const {
  Rational m(0);
  for (const auto& c : s.components()) m += mass(c);
  return m;
}

PwConstMeasure PwConstMeasure::pushforward(const PwAffineMap& map,
                                           Budget& budget) const {
  struct RawPiece {
    Rational lo, hi, height;
  };
  std::vector<RawPiece> raw;
  std::map<Rational, Rational> new_atoms;

  for (std::size_t j = 0; j < map.piece_count(); ++j) {
    const auto& piece = map.pieces()[j];
    const Rational& dom_lo = map.breakpoints()[j];
    const Rational& dom_hi = map.breakpoints()[j + 1];
    for (const auto& d : density_) {
      Rational lo = max(d.lo, dom_lo);
      Rational hi = min(d.hi, dom_hi);
      if (!(lo < hi)) continue;
      if (piece.slope.is_zero()) {
        // The whole overlap collapses onto one point.
        new_atoms[piece.intercept] += d.height * (hi - lo);
        continue;
      }
      Rational a = piece.slope * lo + piece.intercept;
      Rational b = piece.slope * hi + piece.intercept;
      if (b < a) std::swap(a, b);
      raw.push_back({std::move(a), std::move(b),
                     d.height / piece.slope.abs()});
    }
  }
  budget.charge(static_cast<std::int64_t>(raw.size() + atoms_.size()));

  for (const auto& at : atoms_) {
    new_atoms[map(at.at)] += at.mass;
  }

  // Sweep: +height at lo, -height at hi, accumulate between events.
  std::map<Rational, Rational> delta;
  for (const auto& r : raw) {
    delta[r.lo] += r.height;
    delta[r.hi] -= r.height;
  }
  std::vector<DensityPiece> density;
  Rational level(0);
  const Rational* prev = nullptr;
  for (const auto& [pos, change] : delta) {
    if (prev && !level.is_zero()) density.push_back({*prev, pos, level});
    level += change;
    prev = &pos;
  }

  std::vector<Atom> atoms;
  for (auto& [at, mass] : new_atoms) {
    if (!mass.is_zero()) atoms.push_back({at, mass});
  }
  return PwConstMeasure(std::move(density), std::move(atoms));
}

std::string PwConstMeasure::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < density_.size(); ++i) {
    if (i) os << ", ";
    os << density_[i].height << " on [" << density_[i].lo << ","
       << density_[i].hi << ")";
  }
  for (const auto& a : atoms_) {
    os << (density_.empty() && &a == &atoms_.front() ? "" : ", ");
    os << a.mass << " at " << a.at;
  }
  os << "}";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PwConstMeasure& m) {
  return os << m.str();
}

Rational integrate(const PwAffineMap& phi, const PwConstMeasure& mu) {
  Rational total(0);
  const Rational half(1, 2);
  for (const auto& d : mu.density()) {
    for (std::size_t j = 0; j < phi.piece_count(); ++j) {
      const Interval dom = phi.piece_domain(j);
      Rational lo = std::max(d.lo, dom.lo);
      Rational hi = std::min(d.hi, dom.hi);
      if (!(lo < hi)) continue;
      const auto& p = phi.pieces()[j];
      // ∫ (s·x + c) dx over [lo, hi] = s·(hi²−lo²)/2 + c·(hi−lo).
      total += d.height * (p.slope * half * (hi * hi - lo * lo) +
                           p.intercept * (hi - lo));
    }
  }
  for (const auto& a : mu.atoms()) total += phi(a.at) * a.mass;
  return total;
}

}  // namespace nds
