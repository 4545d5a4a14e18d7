#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ndsent/pw_affine.hpp"
#include "ndsent/schedule.hpp"

namespace nds {

enum class SpaceKind { interval, circle };

// Nonautonomous system: a sequence of piecewise-affine maps f_0, f_1, ... of
// the unit interval (or circle), given by a finite map table plus a schedule.
// The n-step transition starting at time i is f_i^n = f_{i+n-1} ∘ ... ∘ f_i,
// with f_i^0 the identity.  Backward images f_i^{-n} are applied to sets.
class NDSystem {
 public:
  struct NamedMap {
    std::string name;
    PwAffineMap map;
  };

  NDSystem(SpaceKind space, std::vector<NamedMap> maps, SystemSchedule schedule,
           std::optional<long long> certified_horizon = std::nullopt);

  // The m-fold power system: step i applies the window f_{i*m}^m of the base
  // system.  Maps are materialized on demand and cached.
  static std::shared_ptr<const NDSystem> power_of(
      std::shared_ptr<const NDSystem> base, long long m);

  SpaceKind space() const { return space_; }
  bool is_power() const { return base_ != nullptr; }
  const NDSystem& base() const;
  long long power_exponent() const { return power_m_; }

  const std::vector<NamedMap>& maps() const { return maps_; }
  const SystemSchedule& schedule() const;
  std::optional<long long> certified_horizon() const { return certified_horizon_; }

  // Map applied at step i.
  const PwAffineMap& map_at(const Integer& i) const;

  // x_{i+n} given x_i = x.
  Rational evaluate(const Integer& i, long long n, const Rational& x,
                    Budget& budget) const;

  // Explicit composite of the window f_i^n as a single piecewise map.
  PwAffineMap compose_window(const Integer& i, long long n, Budget& budget) const;

  // f_i^{-n}(target), computed by successive exact preimages.
  IntervalSet pullback(const Integer& i, long long n, const IntervalSet& target,
                       Budget& budget) const;

  // Per-step Lipschitz constants L_i, ..., L_{i+horizon-1}.
  std::vector<Rational> lipschitz_per_step(const Integer& i,
                                           long long horizon) const;

 private:
  NDSystem() : schedule_(SystemSchedule::constant(0)) {}

  SpaceKind space_ = SpaceKind::interval;
  std::vector<NamedMap> maps_;
  SystemSchedule schedule_;
  std::optional<long long> certified_horizon_;

  // Power-system state.
  std::shared_ptr<const NDSystem> base_;
  long long power_m_ = 1;
  mutable std::map<Integer, PwAffineMap> power_cache_;
  mutable std::mutex power_mu_;
};

}  // namespace nds
