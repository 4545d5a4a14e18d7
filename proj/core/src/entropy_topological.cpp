#include "ndsent/entropy_topological.hpp"

#include <cmath>

#include "ndsent/errors.hpp"

namespace nds {

LipschitzTrace lipschitz_upper_bound(const std::vector<Rational>& L,
                                     const Rational& dim) {
  if (dim.sign() < 0) throw UsageError("dimension must be >= 0");
  LipschitzTrace trace;
  double dim_d = dim.to_double();
  double acc = 0.0;
  double sup = 0.0;
  long long n = 0;
  for (const auto& Li : L) {
    if (Li.sign() <= 0) throw UsageError("Lipschitz constants must be > 0");
    ++n;
    double lg = std::log2(Li.to_double());
    acc += std::max(0.0, lg);
    double value = dim_d * acc / double(n);
    sup = std::max(sup, value);
    trace.rows.push_back({n, value, sup});
  }
  return trace;
}

LipschitzTrace lipschitz_upper_bound(const NDSystem& sys, long long horizon,
                                     const Rational& dim) {
  if (horizon < 1) throw UsageError("horizon must be >= 1");
  return lipschitz_upper_bound(sys.lipschitz_per_step(Integer(0), horizon),
                               dim);
}

std::vector<CircleEntropyRow> expanding_circle_entropies(
    const NDSystem& sys, const PwConstMeasure& mu0,
    const std::vector<long long>& horizons) {
  if (sys.space() != SpaceKind::circle) {
    throw UsageError("expanding-map formulas require a circle system");
  }
  if (horizons.empty()) throw UsageError("need at least one horizon");
  for (std::size_t i = 0; i + 1 < horizons.size(); ++i) {
    if (horizons[i] >= horizons[i + 1]) {
      throw UsageError("horizons must be strictly increasing");
    }
  }
  if (horizons.front() < 1) throw UsageError("horizons must be >= 1");
  if (mu0.total_mass() != Rational(1)) {
    throw UsageError("initial measure must be a probability measure");
  }

  long long top = horizons.back();
  // Per-step slope, validated as a uniform integer expansion factor.
  std::vector<double> log_slopes;
  log_slopes.reserve(top);
  for (long long i = 0; i < top; ++i) {
    const PwAffineMap& f = sys.map_at(Integer(static_cast<long>(i)));
    const Rational& s0 = f.pieces().front().slope;
    for (const auto& piece : f.pieces()) {
      if (piece.slope != s0) {
        throw UsageError("map at step " + std::to_string(i) +
                         " does not have a constant slope");
      }
    }
    if (!s0.is_integer() || s0 < Rational(2)) {
      throw UsageError("map at step " + std::to_string(i) +
                       " is not expanding of integer degree >= 2 (slope " +
                       s0.str() + ")");
    }
    log_slopes.push_back(std::log2(s0.to_double()));
  }

  std::vector<CircleEntropyRow> rows;
  rows.reserve(horizons.size());
  double acc = 0.0;
  long long done = 0;
  for (long long n : horizons) {
    for (; done < n; ++done) acc += log_slopes[done];
    double v = acc / double(n);
    // The degree of f_0^n is the product of slopes, so total expansion and
    // its spatial log-average coincide for spatially constant slopes.
    rows.push_back({n, v, v});
  }
  return rows;
}

}  // namespace nds
