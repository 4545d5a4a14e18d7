#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ndsent/budget.hpp"
#include "ndsent/system.hpp"

namespace nds {

// Fate of one grid orbit under the two-map halving/zigzag system with
// respect to the target window [0, cut).
struct OrbitFate {
  Rational start;
  // Verdict for "first entry time <= horizon": unknown only when the orbit
  // passed through the expanding middle third and the resulting position
  // window straddles the cut at the horizon.
  std::optional<bool> entered_within_horizon;
  // Exact first entry time, when the orbit stays exactly tracked (it may lie
  // far beyond the scan horizon).
  std::optional<Integer> exact_entry_time;
  // True when some zigzag step acted on the open middle third: from there
  // the exact position is replaced by a certified enclosing window.
  bool visited_expanding_region = false;
  // For window-tracked orbits: entry is impossible before the first time and
  // certain by the second.
  std::optional<Integer> entry_possible_from;
  std::optional<Integer> entry_guaranteed_by;
  // Once below the cut the orbit provably never leaves: zigzag blocks fix
  // everything below 1/3 and halving steps only shrink the position.
  bool stays_after_entry = false;
};

struct OrbitConvergenceReport {
  std::size_t grid_points = 0;
  Integer horizon;
  Rational cut;  // target window [0, cut)
  std::size_t entered_within_horizon = 0;
  std::size_t horizon_verdict_unknown = 0;
  std::size_t region_visitors = 0;
  // Every orbit carries either an exact entry time or a guaranteed bound.
  bool all_provably_enter = false;
  std::vector<OrbitFate> rows;
};

// Exact scan of the orbits of j/grid_points, j = 0..grid_points-1, under a
// halving/zigzag system on an index-set schedule.  Zigzag blocks are skipped
// in one piece (they fix everything outside the open middle third); orbits
// that the zigzag scatters inside the middle third are followed as certified
// position windows instead of points, which keeps every verdict sound while
// reaching entry times far beyond any simulable horizon.
//
// Requires the structural shape it exploits (checked exactly, UsageError
// otherwise): an index-set schedule whose on-map halves below 2/3 and maps
// [2/3,1] by 2x-1, and whose off-map is the identity outside the middle
// third, fixes 1/3 and 2/3, and maps [1/3,2/3] into itself.  Requires
// 0 < cut <= 1/3, grid_points >= 1, horizon >= 0.
OrbitConvergenceReport orbit_convergence_scan(const NDSystem& sys,
                                              std::size_t grid_points,
                                              const Integer& horizon,
                                              const Rational& cut,
                                              Budget& budget);

}  // namespace nds
