#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "ndsent/partition.hpp"
#include "ndsent/system.hpp"

namespace nds {

// Time-indexed sequence of partitions P_0, P_1, ... with a declared uniform
// cardinality bound sup_n |P_n| (admissible families are uniformly finite).
// The bound is enforced on access.
class PartitionSequence {
 public:
  enum class Kind { constant, periodic, programmatic };

  static PartitionSequence constant(Partition p);
  static PartitionSequence periodic(std::vector<Partition> ps);
  static PartitionSequence programmatic(std::string name,
                                        std::function<Partition(long long)> gen,
                                        std::size_t cardinality_bound);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::size_t cardinality_bound() const { return bound_; }

  // P_n (programmatic results are cached).
  const Partition& at(long long n) const;

  // Underlying pattern for serialization of non-programmatic kinds.
  const std::vector<Partition>& pattern() const { return pattern_; }

 private:
  PartitionSequence() = default;
  Kind kind_ = Kind::constant;
  std::string name_;
  std::size_t bound_ = 0;
  std::vector<Partition> pattern_;
  std::function<Partition(long long)> gen_;
  struct Cache {
    std::map<long long, Partition> slots;  // node-stable storage
    std::mutex mu;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Sequence μ_0, μ_1, ... with μ_{n+1} = (f_n)_* μ_n.  Computed lazily and
// cached; an exact block-skipping path evaluates μ at astronomically large
// times for index-set schedules whose off-map provably preserves the current
// measure (the invariance is checked, not assumed).
class MeasureSequence {
 public:
  MeasureSequence(std::shared_ptr<const NDSystem> sys, PwConstMeasure mu0);

  const NDSystem& system() const { return *sys_; }
  const PwConstMeasure& initial() const;

  // μ_n for small n (cached chain of pushforwards).
  PwConstMeasure at(long long n, Budget& budget) const;

  // μ_n for arbitrary n.  Off-blocks of index-set schedules are skipped in
  // one piece after verifying (off)_*μ = μ; a non-invariant block longer
  // than step_cap raises UsageError.
  PwConstMeasure at_time(const Integer& n, Budget& budget,
                         long long step_cap = 100000) const;

 private:
  std::shared_ptr<const NDSystem> sys_;
  struct Cache {
    std::deque<PwConstMeasure> chain;  // chain[n] = μ_n; front stays stable
    std::mutex mu;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Joined partition P_i^n = ∨_{j=0}^{n-1} f_i^{-j} P_{i+j}, the dynamical
// refinement over an n-step window starting at time i.  n >= 1.  Cells are
// renamed canonically (indexed) when the join exceeds name_cap cells.
Partition joined_partition(const NDSystem& sys, const PartitionSequence& ps,
                           const Integer& i, long long n, Budget& budget,
                           std::size_t name_cap = 64);

// sup_{0 <= n <= horizon} [ H(P_n | Q_n) + H(Q_n | P_n) ] under μ_n: the
// distance whose small values force entropy traces to stay close.
double rokhlin_distance_bits(const PartitionSequence& p,
                             const PartitionSequence& q,
                             const MeasureSequence& mus, long long horizon,
                             Budget& budget);

}  // namespace nds
