#pragma once

#include <string>
#include <vector>

#include "ndsent/sequences.hpp"

namespace nds {

// Certificate that a (measure sequence, partition sequence) pair admits
// uniformly separated compact cores: for the given ε, each cell P_{n,i}
// contains a compact core K_{n,i} with μ_n(P_{n,i} \ K_{n,i}) ≤ ε, and
// distinct cores at each time stay at least δ apart for a single δ > 0.
//
// Cores are built constructively: every component [a,b) of a cell shrinks
// symmetrically to [a+t, b-t] with the largest margin t whose mass loss
// stays within ε.  The verdict fails when a core cannot be built, two cores
// touch, or the inter-core gaps decay geometrically across the horizon —
// the signature of a pair that admits no uniform δ as n grows.
struct MisiurewiczCertificate {
  Rational eps;
  long long horizon = 0;
  bool pass = false;
  Rational delta;           // min inter-core gap over all checked times
  long long fail_n = -1;    // first violating time (-1 on pass)
  std::string fail_cells;   // "name|name" of the violating pair, or one name
  std::string reason;       // human-readable basis for the verdict

  struct Checkpoint {
    long long n;
    std::vector<Rational> cell_margins;  // shrink margin per cell, cell order
    Rational gap;                        // min inter-core distance (2+ cells)
    bool has_gap = false;                // false for single-cell partitions
  };
  std::vector<Checkpoint> checkpoints;
};

MisiurewiczCertificate misiurewicz_certificate(MeasureSequence& mus,
                                               const PartitionSequence& ps,
                                               const Rational& eps,
                                               long long horizon,
                                               Budget& budget);

}  // namespace nds
