#pragma once

#include <vector>

#include "ndsent/measure.hpp"
#include "ndsent/system.hpp"

namespace nds {

// Trace of the expansion-based upper bound
//   value(n) = dim * (1/n) * sum_{i<n} max(0, log2 L_i)
// where L_i are per-step Lipschitz constants and dim is the capacitive
// dimension of the ambient space (1 for the interval and the circle).
// `running_sup` is the monotone envelope standing in for the limsup.
struct LipschitzTrace {
  struct Row {
    long long n;
    double value_bits;
    double running_sup;
  };
  std::vector<Row> rows;
};

LipschitzTrace lipschitz_upper_bound(const std::vector<Rational>& L,
                                     const Rational& dim = Rational(1));

// Convenience: per-step constants straight from a system's schedule.
LipschitzTrace lipschitz_upper_bound(const NDSystem& sys, long long horizon,
                                     const Rational& dim = Rational(1));

// Exact entropies for schedules of affine expanding circle maps (every piece
// of every scheduled map has the same integer slope s_i >= 2).  In dimension
// one the integral formulas collapse:
//   topological(n) = (1/n) log2 prod_{i<n} s_i  = (1/n) sum log2 s_i
//   measure(n)     = (1/n) sum_{i<n} integral log2 s_i dmu_i = the same,
// independent of the (probability) initial measure, since each slope is
// spatially constant.  Throws UsageError when a scheduled map is not affine
// expanding of degree >= 2 or the system is not on the circle.
struct CircleEntropyRow {
  long long n;
  double topological_bits;
  double measure_bits;
};

std::vector<CircleEntropyRow> expanding_circle_entropies(
    const NDSystem& sys, const PwConstMeasure& mu0,
    const std::vector<long long>& horizons);

}  // namespace nds
