#include "ndsent/information.hpp"

#include <cmath>

#include "ndsent/errors.hpp"

namespace nds {

double shannon_entropy_bits(const std::vector<Rational>& masses) {
  Rational total(0);
  for (const auto& m : masses) {
    if (m.sign() < 0) throw DomainError("negative mass");
    total += m;
  }
  if (total != Rational(1)) {
    throw DomainError("masses sum to " + total.str() + ", not 1");
  }
  double h = 0.0;
  for (const auto& m : masses) {
    if (m.is_zero()) continue;
    double p = m.to_double();
    h -= p * std::log2(p);
  }
  return h;
}

double shannon_entropy_bits(const PwConstMeasure& mu, const Partition& p) {
  return shannon_entropy_bits(p.masses(mu));
}

double conditional_entropy_bits(const PwConstMeasure& mu, const Partition& p,
                                const Partition& q, Budget& budget) {
  double h = 0.0;
  for (const auto& cq : q.cells()) {
    Rational mq = mu.mass(cq.set);
    if (mq.is_zero()) continue;
    double mqd = mq.to_double();
    for (const auto& cp : p.cells()) {
      IntervalSet inter = cp.set.intersect(cq.set);
      budget.charge(static_cast<std::int64_t>(inter.component_count()) + 1);
      Rational mpq = mu.mass(inter);
      if (mpq.is_zero()) continue;
      double j = mpq.to_double();
      h -= j * std::log2(j / mqd);
    }
  }
  return h;
}

double partition_distance_bits(const PwConstMeasure& mu, const Partition& p,
                               const Partition& q, Budget& budget) {
  return conditional_entropy_bits(mu, p, q, budget) +
         conditional_entropy_bits(mu, q, p, budget);
}

}  // namespace nds
