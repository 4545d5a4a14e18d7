#pragma once

// Map literals built directly from breakpoint/slope tables, independent of
// the catalog constructors, so catalog output can be cross-checked against
// them.

#include <memory>

#include "ndsent/system.hpp"

namespace ndtest {

using nds::Integer;
using nds::PwAffineMap;
using nds::Rational;

inline Rational q(long long n, long long d = 1) { return Rational(n, d); }

// Halving with a kick: x/2 below 2/3, then 2x-1.
inline PwAffineMap slow_fast_map() {
  return PwAffineMap({q(0), q(2, 3), q(1)},
                     {{q(1, 2), q(0)}, {q(2), q(-1)}});
}

// Identity off the middle third; on [1/3,2/3] a three-branch zigzag of
// slope +-3 covering the middle third fully.
inline PwAffineMap middle_zigzag_map() {
  return PwAffineMap(
      {q(0), q(1, 3), q(4, 9), q(5, 9), q(2, 3), q(1)},
      {{q(1), q(0)},
       {q(3), q(-2, 3)},
       {q(-3), q(2)},
       {q(3), q(-4, 3)},
       {q(1), q(0)}});
}

inline PwAffineMap doubling_map() {
  return PwAffineMap({q(0), q(1, 2), q(1)}, {{q(2), q(0)}, {q(2), q(-1)}});
}

inline PwAffineMap tent_map() {
  return PwAffineMap({q(0), q(1, 2), q(1)}, {{q(2), q(0)}, {q(-2), q(2)}});
}

inline PwAffineMap rotation_map(const Rational& alpha) {
  if (alpha.is_zero()) return PwAffineMap::identity();
  return PwAffineMap({q(0), Rational(1) - alpha, q(1)},
                     {{q(1), alpha}, {q(1), alpha - Rational(1)}});
}

// Full-slope expanding circle map of integer degree d >= 2.
inline PwAffineMap expanding_circle_map(long d) {
  std::vector<Rational> breaks;
  std::vector<PwAffineMap::Piece> pieces;
  for (long j = 0; j <= d; ++j) breaks.push_back(Rational(j, d));
  for (long j = 0; j < d; ++j) pieces.push_back({Rational(d), Rational(-j)});
  return PwAffineMap(std::move(breaks), std::move(pieces));
}

// The two-map aperiodic interval system: zigzag by default, slow_fast at
// steps {2^(k^2)}.
inline std::shared_ptr<nds::NDSystem> aperiodic_two_map_system() {
  auto sched = nds::SystemSchedule::index_set(
      nds::IndexSequence::pow2_squares(), /*on=*/0, /*off=*/1);
  return std::make_shared<nds::NDSystem>(
      nds::SpaceKind::interval,
      std::vector<nds::NDSystem::NamedMap>{{"f", slow_fast_map()},
                                           {"g", middle_zigzag_map()}},
      sched, /*certified_horizon=*/20000);
}

inline std::shared_ptr<nds::NDSystem> constant_system(PwAffineMap m,
                                                      nds::SpaceKind space =
                                                          nds::SpaceKind::interval) {
  return std::make_shared<nds::NDSystem>(
      space,
      std::vector<nds::NDSystem::NamedMap>{{"m", std::move(m)}},
      nds::SystemSchedule::constant(0));
}

}  // namespace ndtest
