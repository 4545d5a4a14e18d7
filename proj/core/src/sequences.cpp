#include "ndsent/sequences.hpp"

#include <map>

#include "ndsent/errors.hpp"
#include "ndsent/information.hpp"

namespace nds {

PartitionSequence PartitionSequence::constant(Partition p) {
  PartitionSequence s;
  s.kind_ = Kind::constant;
  s.name_ = "constant";
  s.bound_ = p.size();
  s.pattern_.push_back(std::move(p));
  return s;
}

PartitionSequence PartitionSequence::periodic(std::vector<Partition> ps) {
  if (ps.empty()) throw DomainError("periodic partition sequence needs a pattern");
  PartitionSequence s;
  s.kind_ = Kind::periodic;
  s.name_ = "periodic";
  for (const auto& p : ps) s.bound_ = std::max(s.bound_, p.size());
  s.pattern_ = std::move(ps);
  return s;
}

PartitionSequence PartitionSequence::programmatic(
    std::string name, std::function<Partition(long long)> gen,
    std::size_t cardinality_bound) {
  if (cardinality_bound == 0) {
    throw DomainError("cardinality bound must be positive");
  }
  PartitionSequence s;
  s.kind_ = Kind::programmatic;
  s.name_ = std::move(name);
  s.bound_ = cardinality_bound;
  s.gen_ = std::move(gen);
  return s;
}

const Partition& PartitionSequence::at(long long n) const {
  if (n < 0) throw UsageError("partition sequence index must be >= 0");
  switch (kind_) {
    case Kind::constant:
      return pattern_[0];
    case Kind::periodic:
      return pattern_[static_cast<std::size_t>(n % static_cast<long long>(
          pattern_.size()))];
    case Kind::programmatic: {
      std::lock_guard<std::mutex> lock(cache_->mu);
      auto it = cache_->slots.find(n);
      if (it == cache_->slots.end()) {
        Partition p = gen_(n);
        if (p.size() > bound_) {
          throw DomainError("partition sequence '" + name_ + "' violates its " +
                            "cardinality bound at n=" + std::to_string(n) +
                            " (" + std::to_string(p.size()) + " > " +
                            std::to_string(bound_) + ")");
        }
        it = cache_->slots.emplace(n, std::move(p)).first;
      }
      return it->second;
    }
  }
  throw Error("unreachable");
}

MeasureSequence::MeasureSequence(std::shared_ptr<const NDSystem> sys,
                                 PwConstMeasure mu0)
    : sys_(std::move(sys)) {
  cache_->chain.push_back(std::move(mu0));
}

const PwConstMeasure& MeasureSequence::initial() const {
  return cache_->chain.front();
}

PwConstMeasure MeasureSequence::at(long long n, Budget& budget) const {
  if (n < 0) throw UsageError("measure sequence index must be >= 0");
  std::lock_guard<std::mutex> lock(cache_->mu);
  while (cache_->chain.size() <= static_cast<std::size_t>(n)) {
    Integer t(static_cast<long>(cache_->chain.size() - 1));
    cache_->chain.push_back(
        cache_->chain.back().pushforward(sys_->map_at(t), budget));
  }
  return cache_->chain[static_cast<std::size_t>(n)];
}

PwConstMeasure MeasureSequence::at_time(const Integer& n, Budget& budget,
                                        long long step_cap) const {
  if (n < 0) throw UsageError("measure sequence index must be >= 0");
  if (mpz_fits_slong_p(n.get_mpz_t()) && n.get_si() <= step_cap) {
    return at(n.get_si(), budget);
  }
  if (sys_->is_power() || sys_->schedule().kind() != SystemSchedule::Kind::index_set) {
    // Only useful when one map repeats forever: verify invariance, then skip.
    PwConstMeasure mu = initial();
    if (!sys_->is_power() &&
        sys_->schedule().kind() == SystemSchedule::Kind::constant) {
      if (mu.pushforward(sys_->map_at(Integer(0)), budget) == mu) return mu;
    }
    throw UsageError("time index too large to iterate and no invariance to "
                     "exploit");
  }

  const auto& sched = sys_->schedule();
  const auto& seq = sched.sequence();
  const PwAffineMap& on = sys_->maps()[sched.on_map()].map;
  const PwAffineMap& off = sys_->maps()[sched.off_map()].map;

  Integer t = 0;
  PwConstMeasure mu = initial();
  while (t < n) {
    auto next_on = seq.next_member_geq(t);
    Integer block_end = (next_on && *next_on < n) ? *next_on : n;
    if (block_end > t) {
      // Off-block [t, block_end).
      PwConstMeasure pushed = mu.pushforward(off, budget);
      if (pushed == mu) {
        t = block_end;
      } else {
        Integer len = block_end - t;
        if (!mpz_fits_slong_p(len.get_mpz_t()) || len.get_si() > step_cap) {
          throw UsageError(
              "measure not invariant under the off-map; cannot skip a block "
              "of length " + len.get_str());
        }
        long steps = len.get_si();
        mu = std::move(pushed);
        for (long s = 1; s < steps; ++s) mu = mu.pushforward(off, budget);
        t = block_end;
      }
    }
    if (t == n) break;
    // t is an on-time strictly below n.
    mu = mu.pushforward(on, budget);
    t += 1;
  }
  return mu;
}

Partition joined_partition(const NDSystem& sys, const PartitionSequence& ps,
                           const Integer& i, long long n, Budget& budget,
                           std::size_t name_cap) {
  if (n < 1) throw UsageError("joined partition needs a window of length >= 1");
  auto seq_at = [&](long long j) -> const Partition& {
    Integer idx = i + Integer(static_cast<long>(j));
    if (!mpz_fits_slong_p(idx.get_mpz_t())) {
      throw UsageError("partition sequence index does not fit a machine word");
    }
    return ps.at(idx.get_si());
  };
  // Fold from the right: P_i^n = P_i ∨ f_i^{-1}(P_{i+1}^{n-1}); every
  // pullback is through a single step map, never a composite window.
  Partition acc = seq_at(n - 1);
  for (long long j = n - 2; j >= 0; --j) {
    Integer t = i + Integer(static_cast<long>(j));
    Partition pulled = acc.pullback(sys.map_at(t), budget);
    auto naming = (seq_at(j).size() * pulled.size() > name_cap)
                      ? Partition::Naming::indexed
                      : Partition::Naming::composite;
    acc = Partition::refine(seq_at(j), pulled, budget, naming);
  }
  return acc;
}

double rokhlin_distance_bits(const PartitionSequence& p,
                             const PartitionSequence& q,
                             const MeasureSequence& mus, long long horizon,
                             Budget& budget) {
  if (horizon < 0) throw UsageError("horizon must be >= 0");
  double sup = 0.0;
  for (long long n = 0; n <= horizon; ++n) {
    PwConstMeasure mu = mus.at(n, budget);
    double d = partition_distance_bits(mu, p.at(n), q.at(n), budget);
    if (d > sup) sup = d;
  }
  return sup;
}

}  // namespace nds
