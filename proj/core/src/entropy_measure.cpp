#include "ndsent/entropy_measure.hpp"

#include <algorithm>
#include <cmath>

#include "ndsent/errors.hpp"
#include "ndsent/information.hpp"
#include "ndsent/spanning.hpp"

namespace nds {

double EntropyTrace::running_max() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.value_bits);
  return m;
}

EntropyTrace partition_entropy_trace(const NDSystem& sys,
                                     const PwConstMeasure& mu0,
                                     const PartitionSequence& ps,
                                     const std::vector<long long>& horizons,
                                     Budget& budget,
                                     const std::string& system_id,
                                     const std::string& partitions_id) {
  if (horizons.empty()) throw UsageError("need at least one horizon");
  for (std::size_t i = 0; i + 1 < horizons.size(); ++i) {
    if (horizons[i] >= horizons[i + 1]) {
      throw UsageError("horizons must be strictly increasing");
    }
  }
  if (horizons.front() < 1) throw UsageError("horizons must be >= 1");

  EntropyTrace trace;
  trace.system_id = system_id;
  trace.partitions_id = partitions_id;
  double log_bound = std::log2(double(ps.cardinality_bound()));
  for (long long n : horizons) {
    Partition joined = joined_partition(sys, ps, 0, n, budget);
    double H = shannon_entropy_bits(mu0, joined);
    // Refinement growth cap: H(P_0^n) <= sum_{i<n} log2 #P_i.
    if (H > log_bound * double(n) + 1e-6) {
      throw Error("internal: joined entropy exceeds the refinement cap");
    }
    trace.rows.push_back(
        {n, H / double(n), joined.size(), budget.used()});
  }
  return trace;
}

double class_entropy_sup(const std::vector<EntropyTrace>& traces) {
  if (traces.empty()) throw UsageError("need at least one trace");
  const std::string& id = traces.front().system_id;
  double sup = 0.0;
  for (const auto& t : traces) {
    if (t.system_id != id) {
      throw UsageError("traces mix systems '" + id + "' and '" + t.system_id +
                       "'");
    }
    sup = std::max(sup, t.running_max());
  }
  return sup;
}

EmaxDemo emax_blowup_demo(Budget& budget, long long max_n) {
  if (max_n < 2) throw UsageError("demo horizon must be >= 2");
  auto sys = std::make_shared<const NDSystem>(
      SpaceKind::interval,
      std::vector<NDSystem::NamedMap>{{"id", PwAffineMap::identity()}},
      SystemSchedule::constant(0));
  auto digits = PartitionSequence::programmatic(
      "binary-digits",
      [](long long n) { return Partition::binary_digit(static_cast<int>(n)); },
      2);
  std::vector<long long> horizons;
  for (long long n = 1; n <= max_n; ++n) horizons.push_back(n);

  EmaxDemo demo;
  demo.trace = partition_entropy_trace(*sys, PwConstMeasure::lebesgue(),
                                       digits, horizons, budget, "identity",
                                       "binary-digits");

  // Topological estimate: growth slope of the spanning upper bounds between
  // two depths.  The static net size cancels, leaving the orbit-growth rate.
  long long n1 = std::max<long long>(2, max_n / 4);
  long long n2 = std::max<long long>(n1 + 2, max_n / 2);
  auto r1 = spanning_bounds(*sys, n1, Rational(1, 10), Rational(1, 100),
                            budget, 1, "identity");
  auto r2 = spanning_bounds(*sys, n2, Rational(1, 10), Rational(1, 100),
                            budget, 1, "identity");
  demo.topo_estimate_bits =
      (std::log2(double(r2.spanning_upper)) -
       std::log2(double(r1.spanning_upper))) /
      double(n2 - n1);

  MeasureSequence mus(sys, PwConstMeasure::lebesgue());
  demo.certificate =
      misiurewicz_certificate(mus, digits, Rational(1, 100), max_n, budget);
  return demo;
}

}  // namespace nds
