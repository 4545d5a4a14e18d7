#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ndsent/budget.hpp"
#include "ndsent/interval_set.hpp"

namespace nds {

// Piecewise-affine self-map of [0,1].  Breakpoints 0 = b_0 < ... < b_k = 1;
// piece j is the affine function slope*x + intercept on [b_j, b_{j+1}), with
// the final piece closed at 1.  The image must stay inside [0,1]; maps may be
// discontinuous at breakpoints.
class PwAffineMap {
 public:
  struct Piece {
    Rational slope;
    Rational intercept;
    friend bool operator==(const Piece&, const Piece&) = default;
  };

  PwAffineMap(std::vector<Rational> breakpoints, std::vector<Piece> pieces);

  static PwAffineMap identity();
  // Single affine piece on all of [0,1].
  static PwAffineMap affine(Rational slope, Rational intercept);

  std::size_t piece_count() const { return pieces_.size(); }
  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  // Domain of piece j: [b_j, b_{j+1}), closed at both ends for the last piece.
  Interval piece_domain(std::size_t j) const;

  // Index of the piece whose domain contains x.
  std::size_t piece_index(const Rational& x) const;

  // Pointwise evaluation; DomainError outside [0,1].
  Rational operator()(const Rational& x) const;

  // True if values agree at every internal breakpoint (one-sided limits
  // match the assigned value).
  bool continuous() const;
  // Continuity when 0 and 1 are identified (used by circle systems).
  bool continuous_mod1() const;

  // Largest |slope| (the Lipschitz constant of the map).
  Rational max_abs_slope() const;

  // Exact composition this∘inner.  Raises DomainError if the true composite
  // cannot be represented under the left-closed piece convention (possible
  // only when a decreasing piece feeds a discontinuity of *this).
  PwAffineMap compose_after(const PwAffineMap& inner, Budget& budget) const;

  // Exact preimage of a target set: { x : map(x) ∈ target }.
  IntervalSet preimage(const IntervalSet& target, Budget& budget) const;
  IntervalSet preimage(const Interval& target, Budget& budget) const;

  friend bool operator==(const PwAffineMap& a, const PwAffineMap& b) {
    return a.breaks_ == b.breaks_ && a.pieces_ == b.pieces_;
  }

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const PwAffineMap& m);

 private:
  Rational value_on_piece(std::size_t j, const Rational& x) const {
    return pieces_[j].slope * x + pieces_[j].intercept;
  }
  std::vector<Rational> breaks_;
  std::vector<Piece> pieces_;
};

}  // namespace nds
