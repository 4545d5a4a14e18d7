#include "ndsent/system.hpp"

#include "ndsent/errors.hpp"

namespace nds {

NDSystem::NDSystem(SpaceKind space, std::vector<NamedMap> maps,
                   SystemSchedule schedule,
                   std::optional<long long> certified_horizon)
    : space_(space),
      maps_(std::move(maps)),
      schedule_(std::move(schedule)),
      certified_horizon_(certified_horizon) {
  if (maps_.empty()) throw DomainError("system needs at least one map");
  if (schedule_.max_map_index() >= maps_.size()) {
    throw DomainError("schedule references a map outside the table");
  }
  if (space_ == SpaceKind::circle) {
    for (const auto& nm : maps_) {
      if (!nm.map.continuous_mod1()) {
        throw DomainError("circle map '" + nm.name +
                          "' is not continuous mod 1");
      }
    }
  }
}

std::shared_ptr<const NDSystem> NDSystem::power_of(
    std::shared_ptr<const NDSystem> base, long long m) {
  if (m < 1) throw UsageError("power exponent must be >= 1");
  if (base->is_power()) {
    // Collapse nested powers: (f^[a])^[b] = f^[a*b].
    long long combined = base->power_m_ * m;
    return power_of(base->base_, combined);
  }
  auto sys = std::shared_ptr<NDSystem>(new NDSystem());
  sys->space_ = base->space_;
  sys->schedule_ = SystemSchedule::constant(0);
  sys->base_ = std::move(base);
  sys->power_m_ = m;
  sys->certified_horizon_ = sys->base_->certified_horizon_;
  return sys;
}

const NDSystem& NDSystem::base() const {
  if (!base_) throw UsageError("not a power system");
  return *base_;
}

const SystemSchedule& NDSystem::schedule() const {
  if (base_) throw UsageError("power systems have a derived schedule");
  return schedule_;
}

const PwAffineMap& NDSystem::map_at(const Integer& i) const {
  if (i < 0) throw DomainError("negative time index");
  if (base_) {
    std::lock_guard<std::mutex> lock(power_mu_);
    auto it = power_cache_.find(i);
    if (it == power_cache_.end()) {
      Budget scratch;  // materializing one window of catalog-sized maps
      PwAffineMap w = base_->compose_window(i * Integer(static_cast<long>(power_m_)), power_m_, scratch);
      it = power_cache_.emplace(i, std::move(w)).first;
    }
    return it->second;
  }
  return maps_[schedule_.map_at(i)].map;
}

Rational NDSystem::evaluate(const Integer& i, long long n, const Rational& x,
                            Budget& budget) const {
  if (n < 0) throw UsageError("evaluate needs n >= 0");
  if (base_) return base_->evaluate(i * Integer(static_cast<long>(power_m_)), n * power_m_, x, budget);
  if (x < Rational(0) || x > Rational(1)) {
    throw DomainError("point outside [0,1]: " + x.str());
  }
  budget.charge(n);
  Rational y = x;
  Integer t = i;
  for (long long s = 0; s < n; ++s, ++t) y = map_at(t)(y);
  return y;
}

PwAffineMap NDSystem::compose_window(const Integer& i, long long n,
                                     Budget& budget) const {
  if (n < 0) throw UsageError("compose_window needs n >= 0");
  if (base_) return base_->compose_window(i * Integer(static_cast<long>(power_m_)), n * power_m_, budget);
  PwAffineMap w = PwAffineMap::identity();
  Integer t = i;
  for (long long s = 0; s < n; ++s, ++t) {
    w = map_at(t).compose_after(w, budget);
  }
  return w;
}

IntervalSet NDSystem::pullback(const Integer& i, long long n,
                               const IntervalSet& target,
                               Budget& budget) const {
  if (n < 0) throw UsageError("pullback needs n >= 0");
  if (base_) return base_->pullback(i * Integer(static_cast<long>(power_m_)), n * power_m_, target, budget);
  IntervalSet cur = target;
  for (long long s = n - 1; s >= 0; --s) {
    Integer t = i + Integer(static_cast<long>(s));
    cur = map_at(t).preimage(cur, budget);
  }
  return cur;
}

std::vector<Rational> NDSystem::lipschitz_per_step(const Integer& i,
                                                   long long horizon) const {
  if (horizon < 0) throw UsageError("horizon must be >= 0");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(horizon));
  Integer t = i;
  for (long long s = 0; s < horizon; ++s, ++t) {
    out.push_back(map_at(t).max_abs_slope());
  }
  return out;
}

}  // namespace nds
