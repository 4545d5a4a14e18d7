#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ndsent/measure.hpp"

namespace nds {

// Finite partition of [0,1] into named interval-set cells, understood mod
// null sets.  The constructor normalizes every cell to the canonical
// representative of its mod-null class: components are half-open [lo, hi)
// with isolated points dropped and single-point gaps healed, and the point 1
// belongs to the component whose closure reaches it.  As a result stored
// cells tile [0,1] pointwise (every point lies in exactly one cell) and
// component counts stay bounded under repeated pullbacks.  Cells are held in
// a canonical order (by leftmost component), which fixes the summation order
// of entropy values.
class Partition {
 public:
  struct Cell {
    std::string name;
    IntervalSet set;
  };

  enum class Naming { composite, indexed };

  explicit Partition(std::vector<Cell> cells);

  // k equal half-open cells [j/k, (j+1)/k).
  static Partition uniform(long k, const std::string& prefix = "c");
  // Dyadic intervals of the given level (2^level cells).
  static Partition dyadic(int level);
  // Two cells by the j-th binary digit (digit 0 is the most significant).
  static Partition binary_digit(int j);

  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  // Index of the unique cell containing x.
  std::size_t cell_index(const Rational& x) const;

  std::vector<Rational> masses(const PwConstMeasure& mu) const;

  // Common refinement a ∨ b: nonnull pairwise intersections.
  static Partition refine(const Partition& a, const Partition& b,
                          Budget& budget, Naming naming = Naming::composite);

  // Preimage partition {map^{-1}(cell)}: cell names are preserved, cells
  // whose preimage is null are dropped (the map need not be onto).  If the
  // preimages fail to cover [0,1] mod null — possible when a zero-slope
  // branch sits over a cell boundary — construction fails loudly.
  Partition pullback(const PwAffineMap& map, Budget& budget) const;

  // True when every cell of *this is a union of cells of `finer` mod null
  // (i.e. *this is coarser than `finer`).
  bool coarsens(const Partition& finer) const;

  bool equals_mod_null(const Partition& o) const;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Partition& p);

 private:
  std::vector<Cell> cells_;
};

}  // namespace nds
