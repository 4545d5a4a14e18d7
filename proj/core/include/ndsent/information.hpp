#pragma once

#include <vector>

#include "ndsent/partition.hpp"

namespace nds {

// Shannon entropy -Σ p log2(p) in bits.  Masses must be exact; conversion to
// floating point happens here and nowhere earlier.  Summation runs in the
// given order, so canonical cell order ⇒ reproducible values.
double shannon_entropy_bits(const std::vector<Rational>& masses);

double shannon_entropy_bits(const PwConstMeasure& mu, const Partition& p);

// Conditional entropy H(P | Q) = -Σ_{p,q} μ(p∩q) log2( μ(p∩q) / μ(q) ).
double conditional_entropy_bits(const PwConstMeasure& mu, const Partition& p,
                                const Partition& q, Budget& budget);

// Symmetric partition distance H(P|Q) + H(Q|P) under μ.  Vanishes exactly
// when the partitions agree mod null; entropy is 1-Lipschitz in it.
double partition_distance_bits(const PwConstMeasure& mu, const Partition& p,
                               const Partition& q, Budget& budget);

}  // namespace nds
