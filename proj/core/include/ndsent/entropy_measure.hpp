#pragma once

#include <string>
#include <vector>

#include "ndsent/misiurewicz.hpp"
#include "ndsent/sequences.hpp"

namespace nds {

// Finite-horizon trace of the measure-entropy quotients
//   value(n) = H_{mu_0}(P_0^n) / n   (bits),
// the honest stand-in for the limsup definition: the limsup need not be a
// limit, so results are reported per horizon with a running maximum rather
// than as a single scalar.
struct EntropyTrace {
  std::string system_id;
  std::string partitions_id;
  struct Row {
    long long n;
    double value_bits;
    std::size_t cells;          // cells of the joined partition P_0^n
    std::int64_t budget_used;   // cumulative budget after this horizon
  };
  std::vector<Row> rows;

  double running_max() const;
};

// Exact-mass entropies of the joined partitions at each horizon.  Horizons
// must be nonempty and strictly increasing.
EntropyTrace partition_entropy_trace(const NDSystem& sys,
                                     const PwConstMeasure& mu0,
                                     const PartitionSequence& ps,
                                     const std::vector<long long>& horizons,
                                     Budget& budget,
                                     const std::string& system_id = "",
                                     const std::string& partitions_id = "");

// Entropy of the admissible class generated by a finite family: the supremum
// of the traces' running maxima.  All traces must come from the same system.
double class_entropy_sup(const std::vector<EntropyTrace>& traces);

// The cautionary demo for cardinality-bound-only admissible classes: on the
// identity map with the binary-digit partition sequence (uniformly 2 cells),
// the measure trace sits at exactly 1 bit per step while the topological
// entropy is 0 and the core-separation certificate fails.  An admissible
// class constrained only by cardinality therefore overshoots topological
// entropy by an arbitrary margin.
struct EmaxDemo {
  EntropyTrace trace;               // horizons 1..max_n, all values 1.0
  double topo_estimate_bits = 0.0;  // growth-slope estimate, ~0
  MisiurewiczCertificate certificate;  // verdict: fail
};

EmaxDemo emax_blowup_demo(Budget& budget, long long max_n = 20);

}  // namespace nds
