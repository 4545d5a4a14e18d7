#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ndsent/pw_affine.hpp"

namespace nds {

// Probability measure on [0,1] made of a piecewise-constant density part plus
// finitely many atoms.  Exact rational heights/masses; total mass is always 1.
//
// The density is a mod-null object: pieces are stored half-open [lo, hi),
// sorted, with positive height, and adjacent equal-height pieces merged.
// Gaps carry zero density.
class PwConstMeasure {
 public:
  struct DensityPiece {
    Rational lo, hi, height;
    friend bool operator==(const DensityPiece&, const DensityPiece&) = default;
  };
  struct Atom {
    Rational at, mass;
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  // Lebesgue measure: density 1 everywhere.
  static PwConstMeasure lebesgue();
  static PwConstMeasure point_mass(Rational at);
  // General constructor; validates mass 1, nonnegative heights, positive atom
  // masses, atoms inside [0,1], and canonicalizes.
  PwConstMeasure(std::vector<DensityPiece> density, std::vector<Atom> atoms);

  const std::vector<DensityPiece>& density() const { return density_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool purely_continuous() const { return atoms_.empty(); }

  Rational mass(const Interval& iv) const;
  Rational mass(const IntervalSet& s) const;
  Rational total_mass() const;

  // Image measure under a piecewise-affine map: density transforms by
  // 1/|slope| per branch; zero-slope branches and atoms produce atoms.
  PwConstMeasure pushforward(const PwAffineMap& map, Budget& budget) const;

  // Canonical-form equality (and since the form is canonical, a.k.a.
  // equality of measures).
  friend bool operator==(const PwConstMeasure&, const PwConstMeasure&) = default;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const PwConstMeasure& m);

 private:
  PwConstMeasure() = default;
  void normalize_and_check();
  std::vector<DensityPiece> density_;
  std::vector<Atom> atoms_;
};

// Exact integral of a piecewise-affine function against the measure:
// per-piece antiderivatives over the density part plus phi(atom)*mass.
Rational integrate(const PwAffineMap& phi, const PwConstMeasure& mu);

}  // namespace nds
