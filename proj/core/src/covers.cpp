#include "ndsent/covers.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ndsent/errors.hpp"

namespace nds {

namespace {

bool comp_order(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.hi < b.hi;
}

// Deterministic ordering of refined elements (by leftmost component).
bool element_order(const IntervalSet& a, const IntervalSet& b) {
  const auto& x = a.components();
  const auto& y = b.components();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i].lo != y[i].lo) return x[i].lo < y[i].lo;
    if (x[i].hi != y[i].hi) return x[i].hi < y[i].hi;
    if (x[i].lo_closed != y[i].lo_closed) return x[i].lo_closed;
    if (x[i].hi_closed != y[i].hi_closed) return x[i].hi_closed;
  }
  return x.size() < y.size();
}

}  // namespace

OpenCover::OpenCover(std::vector<Interval> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw UsageError("cover needs at least one element");
  for (const auto& e : elements_) {
    if (e.lo_closed || e.hi_closed || !(e.lo < e.hi)) {
      throw UsageError("cover elements must be nonempty open intervals, got " +
                       e.str());
    }
  }
  std::sort(elements_.begin(), elements_.end(), comp_order);
  // Sweep: every point of [0,1] must be interior to some element.
  Rational r(0);
  while (r <= Rational(1)) {
    Rational reach = r;
    for (const auto& e : elements_) {
      if (e.lo < r && e.hi > reach) reach = e.hi;
      if (e.lo >= r) break;  // sorted; later elements start even further right
    }
    if (reach == r) {
      throw UsageError("open intervals do not cover the point " + r.str());
    }
    if (reach > Rational(1)) return;
    r = reach;
  }
}

Rational OpenCover::lebesgue_number() const {
  // With elements sorted by lo the binding constraints are, for each
  // consecutive start lo_{i+1} in (0,1), the distance the earlier elements
  // reach past it: max(hi_0..hi_i) - lo_{i+1}.  A closed interval of that
  // length placed just left of lo_{i+1} still fits in the deepest earlier
  // element; anything longer pokes out of every element.
  std::optional<Rational> best;
  Rational prefix_hi = elements_.front().hi;
  for (std::size_t i = 1; i < elements_.size(); ++i) {
    const Rational& next_lo = elements_[i].lo;
    if (next_lo.sign() > 0 && next_lo < Rational(1)) {
      Rational c = prefix_hi - next_lo;
      if (!best || c < *best) best = c;
    }
    prefix_hi = max(prefix_hi, elements_[i].hi);
  }
  Rational delta = best ? *best : Rational(1);
  return min(delta, Rational(1));
}

CoverSequence::CoverSequence(std::vector<OpenCover> covers)
    : covers_(std::move(covers)) {
  if (covers_.empty()) throw UsageError("cover sequence needs covers");
}

CoverSequence CoverSequence::constant(OpenCover cover) {
  return CoverSequence(std::vector<OpenCover>{std::move(cover)});
}

CoverSequence CoverSequence::periodic(std::vector<OpenCover> covers) {
  return CoverSequence(std::move(covers));
}

const OpenCover& CoverSequence::at(long long n) const {
  if (n < 0) throw UsageError("cover index must be >= 0");
  return covers_[static_cast<std::size_t>(n) % covers_.size()];
}

Rational CoverSequence::min_lebesgue_number() const {
  Rational m = covers_.front().lebesgue_number();
  for (const auto& c : covers_) m = min(m, c.lebesgue_number());
  return m;
}

double CoverCountReport::bits() const {
  if (n <= 0 || minimal <= 0) return 0.0;
  return std::log2(double(minimal)) / double(n);
}

namespace {

// True when `e` covers an initial stretch of the uncovered component `c`:
// either c's infimum itself (when c contains it) or points immediately to
// its right (when c is open at the left end).
bool covers_initial(const IntervalSet& e, const Interval& c) {
  for (const auto& k : e.components()) {
    if (k.lo > c.lo) return false;  // sorted components; none can reach back
    if (c.lo_closed) {
      if (k.contains(c.lo)) return true;
    } else {
      if (k.lo <= c.lo && k.hi > c.lo) return true;
    }
  }
  return false;
}

struct SubcoverSearch {
  const std::vector<IntervalSet>* elements;
  Rational max_elem_measure;
  long long best;                 // incumbent size
  long long node_cap;
  long long nodes = 0;
  bool exhausted = false;
  bool sharp_bounds = false;      // per-node max-gain bound (costs E measures)
  Interval domain = Interval::unit();

  static long long to_count(const Integer& c, long long fallback) {
    return c.fits_slong_p() ? c.get_si() : fallback;
  }

  void run(const IntervalSet& covered, long long count) {
    if (exhausted || ++nodes > node_cap) {
      exhausted = true;
      return;
    }
    IntervalSet remaining = covered.complement(domain);
    if (remaining.components().empty()) {
      best = std::min(best, count);
      return;
    }
    Rational rm = remaining.measure();
    std::vector<Rational> gains;
    long long need = 1;
    if (!rm.is_zero()) {
      Rational mg(0);
      if (sharp_bounds) {
        gains.reserve(elements->size());
        for (const auto& e : *elements) {
          Rational g = e.intersect(remaining).measure();
          gains.push_back(g);
          mg = max(mg, g);
        }
      } else {
        mg = max_elem_measure;
      }
      if (mg.is_zero()) return;  // positive gap nobody covers: dead branch
      need = std::max<long long>(1, to_count((rm / mg).ceil(), best));
    }
    if (count + need >= best) return;
    const Interval& front = remaining.components().front();
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < elements->size(); ++i) {
      if (covers_initial((*elements)[i], front)) cands.push_back(i);
    }
    if (cands.empty()) return;  // leftmost gap cannot be covered here
    if (sharp_bounds) {
      std::sort(cands.begin(), cands.end(), [&](std::size_t a, std::size_t b) {
        if (gains[a] != gains[b]) return gains[b] < gains[a];
        return a < b;
      });
    } else {
      std::sort(cands.begin(), cands.end(), [&](std::size_t a, std::size_t b) {
        return element_order((*elements)[b], (*elements)[a]);
      });
    }
    for (auto i : cands) {
      if (exhausted) return;
      run(covered.unite((*elements)[i]), count + 1);
    }
  }
};

}  // namespace

CoverCountReport cover_refinement_count(const NDSystem& sys,
                                        const CoverSequence& covers,
                                        long long n, Budget& budget,
                                        std::size_t element_cap,
                                        long long node_cap) {
  if (n < 1) throw UsageError("refinement depth n must be >= 1");
  CoverCountReport rep;
  rep.n = n;

  // Right fold with single-step preimages:
  //   R_t = U_t ∨ f_t^{-1}(R_{t+1}),  R_n = {[0,1]}.
  std::vector<IntervalSet> refined{IntervalSet(Interval::unit())};
  for (long long t = n - 1; t >= 0; --t) {
    std::vector<IntervalSet> next;
    const auto& cover = covers.at(t);
    bool nontrivial_tail = t + 1 < n;  // R_{t+1} is more than {[0,1]}
    for (const auto& r : refined) {
      IntervalSet pre = nontrivial_tail
                            ? sys.map_at(Integer(static_cast<long>(t))).preimage(r, budget)
                            : IntervalSet(Interval::unit());
      for (const auto& u : cover.elements()) {
        IntervalSet clipped = pre.intersect(
            Interval(max(u.lo, Rational(0)), min(u.hi, Rational(1)),
                     u.lo.sign() < 0, u.hi > Rational(1)));
        if (clipped.components().empty()) continue;
        next.push_back(std::move(clipped));
      }
    }
    budget.charge(static_cast<std::int64_t>(next.size()));
    if (next.size() > element_cap * 4) {
      throw BudgetError("refined cover exploded past the element cap");
    }
    refined = std::move(next);
  }
  std::sort(refined.begin(), refined.end(), element_order);
  rep.refined_elements = refined.size();

  // The refined elements must still cover [0,1] pointwise.
  {
    std::vector<Interval> all;
    for (const auto& e : refined) {
      all.insert(all.end(), e.components().begin(), e.components().end());
    }
    IntervalSet uni(std::move(all));
    if (!(uni.components().size() == 1 &&
          uni.components().front() == Interval::unit())) {
      throw Error("internal: refined cover fails to cover [0,1]");
    }
  }

  // Dominated elements (subsets of another element) never help a minimal
  // subcover; drop them to shrink the search.
  {
    std::vector<char> dominated(refined.size(), 0);
    for (std::size_t i = 0; i < refined.size(); ++i) {
      for (std::size_t j = 0; j < refined.size() && !dominated[i]; ++j) {
        if (i == j || dominated[j]) continue;
        if (refined[i].subset_of(refined[j]) &&
            !(refined[j].subset_of(refined[i]) && i < j)) {
          dominated[i] = 1;
        }
      }
    }
    std::vector<IntervalSet> kept;
    for (std::size_t i = 0; i < refined.size(); ++i) {
      if (!dominated[i]) kept.push_back(std::move(refined[i]));
    }
    refined = std::move(kept);
  }

  // Greedy incumbent: take the element with the largest uncovered gain; when
  // only point gaps remain, any element containing the first gap point.
  IntervalSet covered;
  long long greedy = 0;
  while (true) {
    IntervalSet remaining = covered.complement(Interval::unit());
    if (remaining.components().empty()) break;
    std::size_t pick = refined.size();
    if (!remaining.measure().is_zero()) {
      Rational best_gain(0);
      for (std::size_t i = 0; i < refined.size(); ++i) {
        Rational gain = refined[i].intersect(remaining).measure();
        if (gain > best_gain) {
          best_gain = gain;
          pick = i;
        }
      }
    }
    if (pick == refined.size()) {
      const Interval& front = remaining.components().front();
      for (std::size_t i = 0; i < refined.size(); ++i) {
        if (covers_initial(refined[i], front)) {
          pick = i;
          break;
        }
      }
      if (pick == refined.size()) {
        throw Error("internal: uncovered gap with no candidate element");
      }
    }
    covered = covered.unite(refined[pick]);
    ++greedy;
  }
  rep.greedy_upper = greedy;

  Rational max_measure(0);
  for (const auto& e : refined) max_measure = max(max_measure, e.measure());

  SubcoverSearch search;
  search.elements = &refined;
  search.max_elem_measure = max_measure;
  search.best = greedy;
  search.node_cap = node_cap;
  search.sharp_bounds = refined.size() <= 256;

  // Volume lower bound: m chosen elements cover at most the sum of the m
  // largest [0,1]-restricted measures, so any subcover needs at least as
  // many elements as it takes the largest measures to reach total mass 1.
  // (The greedy cover's g elements sum to >= 1, so the bound never exceeds
  // g.)
  long long root_lb = 0;
  {
    std::vector<Rational> volumes;
    volumes.reserve(refined.size());
    for (const auto& e : refined) {
      volumes.push_back(e.intersect(Interval::unit()).measure());
    }
    std::sort(volumes.begin(), volumes.end(),
              [](const Rational& a, const Rational& b) { return b < a; });
    Rational acc(0);
    const Rational one(1);
    for (const Rational& v : volumes) {
      if (acc >= one) break;
      acc += v;
      ++root_lb;
    }
    root_lb = std::max<long long>(root_lb, 1);
  }

  if (refined.size() > element_cap) {
    rep.minimal = greedy;
    rep.lower_bound = root_lb;
    rep.proven = false;
    return rep;
  }
  if (root_lb >= greedy) {
    rep.minimal = greedy;
    rep.lower_bound = greedy;
    rep.proven = true;
    return rep;
  }
  search.run(IntervalSet(), 0);
  budget.charge(search.nodes);
  rep.minimal = search.best;
  rep.proven = !search.exhausted;
  rep.lower_bound = rep.proven ? rep.minimal : root_lb;
  return rep;
}

}  // namespace nds
