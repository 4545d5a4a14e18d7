#pragma once

#include <string>
#include <vector>

#include "ndsent/interval_set.hpp"
#include "ndsent/system.hpp"

namespace nds {

// Finite open cover of [0,1]: elements are open intervals that may stick out
// of the unit interval (an element must reach below 0 to cover the point 0).
// Validated at construction: the union must contain all of [0,1].
class OpenCover {
 public:
  explicit OpenCover(std::vector<Interval> elements);

  const std::vector<Interval>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  // Largest δ such that every closed subinterval of [0,1] of length δ fits
  // inside a single element (endpoints compared non-strictly), capped at 1.
  Rational lebesgue_number() const;

 private:
  std::vector<Interval> elements_;
};

// Time-indexed sequence of open covers; constant or periodic.
class CoverSequence {
 public:
  static CoverSequence constant(OpenCover cover);
  static CoverSequence periodic(std::vector<OpenCover> covers);

  const OpenCover& at(long long n) const;
  const std::vector<OpenCover>& pattern() const { return covers_; }
  bool is_constant() const { return covers_.size() == 1; }

  // Smallest Lebesgue number across the pattern (bounded away from zero by
  // construction since each cover validates).
  Rational min_lebesgue_number() const;

 private:
  explicit CoverSequence(std::vector<OpenCover> covers);
  std::vector<OpenCover> covers_;
};

// Result of counting a minimal subcover of the n-step refined cover
//   U_0 ∨ f_0^{-1}U_1 ∨ ... ∨ f_0^{-(n-1)}U_{n-1}.
struct CoverCountReport {
  long long n = 0;
  std::size_t refined_elements = 0;  // nonempty refined intersections
  long long greedy_upper = 0;        // greedy subcover size
  long long lower_bound = 0;         // proven lower bound
  long long minimal = 0;             // = greedy_upper when not proven
  bool proven = false;               // true when branch-and-bound completed
  double bits() const;               // log2(minimal)/n
};

// Exact branch-and-bound minimal subcover with a greedy incumbent.  The
// refined elements are built by single-step preimages (right fold).  When the
// element count exceeds `element_cap` or the search exceeds `node_cap`
// nodes, the report carries the greedy value with proven=false.
CoverCountReport cover_refinement_count(const NDSystem& sys,
                                        const CoverSequence& covers,
                                        long long n, Budget& budget,
                                        std::size_t element_cap = 10000,
                                        long long node_cap = 2000000);

}  // namespace nds
