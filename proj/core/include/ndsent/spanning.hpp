#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ndsent/system.hpp"

namespace nds {

// Grid-certified bounds on orbit-counting quantities at time depth n and
// resolution ε.  Writing r(n,ε) for the minimal cardinality of a set whose
// ε-orbit-neighbourhoods cover the space and s(n,ε) for the maximal
// cardinality of a set whose points stay pairwise ε-apart along orbits:
//   - `separated_lower` is the size of a greedily built set of grid points
//     with pairwise orbit distance > 2ε.  Any such set certifies
//     r(n,ε) >= separated_lower unconditionally.
//   - `spanning_upper` is the size of a greedy cover of the grid by orbit
//     ε-balls.  When `certified` is true the ball radius was shrunk by the
//     worst-case orbit deviation of an off-grid point (grid_step/2 times the
//     accumulated Lipschitz bound), so spanning_upper >= r(n,ε) for the whole
//     space; otherwise it only bounds the grid proxy and is flagged.
struct SpanningReport {
  std::string system_id;
  long long n = 0;
  Rational eps;
  Rational grid_step;
  long long separated_lower = 0;
  long long spanning_upper = 0;
  bool certified = false;

  double lower_bits() const;  // log2(separated_lower)/n
  double upper_bits() const;  // log2(spanning_upper)/n
};

// Computes both bounds over the rational grid {0, step, 2*step, ..., 1}.
// Orbit segments are exact; distances are compared through doubles with an
// exact re-check whenever a comparison lands within 2^-40 of the threshold.
// `workers` parallelizes orbit evaluation only; selection is deterministic.
// Throws UsageError when eps <= 0, step <= 0, or step > eps.
SpanningReport spanning_bounds(const NDSystem& sys, long long n,
                               const Rational& eps, const Rational& grid_step,
                               Budget& budget, int workers = 1,
                               const std::string& system_id = "");

// Per-ε traces of the entropy quotients (1/n)log2(count), grouped from a
// batch of reports over the same system and sorted by n.
struct SpanningTrace {
  Rational eps;
  struct Row {
    long long n;
    long long separated_lower;
    long long spanning_upper;
    double lower_bits;
    double upper_bits;
    bool certified;
  };
  std::vector<Row> rows;
};

std::vector<SpanningTrace> entropy_from_spanning(
    const std::vector<SpanningReport>& reports);

}  // namespace nds
