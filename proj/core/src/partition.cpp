#include "ndsent/partition.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "ndsent/errors.hpp"

namespace nds {

namespace {

// Canonical cell order: lexicographic over the component list.
bool cell_less(const Partition::Cell& a, const Partition::Cell& b) {
  const auto& x = a.set.components();
  const auto& y = b.set.components();
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i].lo != y[i].lo) return x[i].lo < y[i].lo;
    if (x[i].lo_closed != y[i].lo_closed) return x[i].lo_closed;
    if (x[i].hi != y[i].hi) return x[i].hi < y[i].hi;
    if (x[i].hi_closed != y[i].hi_closed) return !x[i].hi_closed;
  }
  return x.size() < y.size();
}

// Canonical mod-null representative of a cell: isolated points are dropped,
// every component becomes [lo, hi) (closures heal single-point gaps left by
// preimages of half-open pieces), and the component reaching 1 keeps it.
// Without this, repeated pullbacks under multi-branch maps multiply boundary
// scars and component counts grow exponentially in the composition depth.
IntervalSet canonical_cell(const IntervalSet& s) {
  std::vector<Interval> parts;
  for (const auto& c : s.components()) {
    if (c.is_point()) continue;
    parts.push_back(Interval(c.lo, c.hi, true, c.hi == Rational(1)));
  }
  return IntervalSet(std::move(parts));
}

}  // namespace

Partition::Partition(std::vector<Cell> cells) : cells_(std::move(cells)) {
  if (cells_.empty()) throw DomainError("partition needs at least one cell");
  for (auto& c : cells_) c.set = canonical_cell(c.set);
  Rational total(0);
  std::vector<Interval> all_comps;
  std::set<std::string> names;
  for (const auto& c : cells_) {
    if (c.set.measure().is_zero()) {
      throw DomainError("null cell '" + c.name + "' in partition");
    }
    if (!names.insert(c.name).second) {
      throw DomainError("duplicate cell name '" + c.name + "'");
    }
    total += c.set.measure();
    all_comps.insert(all_comps.end(), c.set.components().begin(),
                     c.set.components().end());
  }
  IntervalSet all(std::move(all_comps));
  if (total != Rational(1)) {
    throw DomainError("partition cell masses sum to " + total.str() +
                      ", not 1 (cells overlap or leak)");
  }
  if (all.measure() != Rational(1)) {
    throw DomainError("partition union has measure " + all.measure().str());
  }
  std::sort(cells_.begin(), cells_.end(), cell_less);
}

Partition Partition::uniform(long k, const std::string& prefix) {
  if (k < 1) throw DomainError("uniform partition needs k >= 1");
  std::vector<Cell> cells;
  int width = static_cast<int>(std::to_string(k - 1).size());
  for (long j = 0; j < k; ++j) {
    std::string idx = std::to_string(j);
    cells.push_back(Cell{prefix + std::string(width - idx.size(), '0') + idx,
                         IntervalSet(Interval::half_open(Rational(j, k),
                                                         Rational(j + 1, k)))});
  }
  return Partition(std::move(cells));
}

Partition Partition::dyadic(int level) {
  if (level < 0) throw DomainError("dyadic level must be >= 0");
  return uniform(1L << level, "d");
}

Partition Partition::binary_digit(int j) {
  if (j < 0) throw DomainError("digit index must be >= 0");
  // Digit j of x is 0 on [2m/2^{j+1}, (2m+1)/2^{j+1}).
  std::vector<Interval> zeros, ones;
  long cells = 1L << (j + 1);
  for (long m = 0; m < cells; ++m) {
    auto iv = Interval::half_open(Rational(m, cells), Rational(m + 1, cells));
    (m % 2 == 0 ? zeros : ones).push_back(iv);
  }
  return Partition({Cell{"b" + std::to_string(j) + "=0", IntervalSet(zeros)},
                    Cell{"b" + std::to_string(j) + "=1", IntervalSet(ones)}});
}

std::size_t Partition::cell_index(const Rational& x) const {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].set.contains(x)) return i;
  }
  throw UsageError("point " + x.str() +
                   " lies on a null boundary outside every stored cell");
}

std::vector<Rational> Partition::masses(const PwConstMeasure& mu) const {
  for (const auto& a : mu.atoms()) {
    int hits = 0;
    for (const auto& c : cells_) {
      if (c.set.contains(a.at)) ++hits;
    }
    if (hits != 1) {
      throw UsageError("atom at " + a.at.str() +
                       " sits on a partition null boundary; cell masses "
                       "would depend on the representative");
    }
  }
  std::vector<Rational> out;
  out.reserve(cells_.size());
  for (const auto& c : cells_) out.push_back(mu.mass(c.set));
  return out;
}

Partition Partition::refine(const Partition& a, const Partition& b,
                            Budget& budget, Naming naming) {
  std::vector<Cell> cells;
  budget.charge(static_cast<std::int64_t>(a.size() * b.size()));
  for (const auto& ca : a.cells_) {
    for (const auto& cb : b.cells_) {
      IntervalSet got = ca.set.intersect(cb.set);
      budget.charge(static_cast<std::int64_t>(got.component_count()));
      if (got.measure().is_zero()) continue;
      cells.push_back(Cell{ca.name + "&" + cb.name, std::move(got)});
    }
  }
  Partition p(std::move(cells));
  if (naming == Naming::indexed) {
    int width = static_cast<int>(std::to_string(p.cells_.size() - 1).size());
    for (std::size_t i = 0; i < p.cells_.size(); ++i) {
      std::string idx = std::to_string(i);
      p.cells_[i].name = "j" + std::string(width - idx.size(), '0') + idx;
    }
  }
  return p;
}

Partition Partition::pullback(const PwAffineMap& map, Budget& budget) const {
  std::vector<Cell> cells;
  for (const auto& c : cells_) {
    IntervalSet pre = map.preimage(c.set, budget);
    if (pre.measure().is_zero()) continue;
    cells.push_back(Cell{c.name, std::move(pre)});
  }
  return Partition(std::move(cells));
}

bool Partition::coarsens(const Partition& finer) const {
  // Assign each fine cell to the coarse cell that mod-null contains it.
  std::vector<Rational> covered(cells_.size(), Rational(0));
  for (const auto& fc : finer.cells_) {
    bool assigned = false;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      Rational inter = fc.set.intersect(cells_[i].set).measure();
      if (inter == fc.set.measure()) {
        covered[i] += inter;
        assigned = true;
        break;
      }
      if (!inter.is_zero()) return false;  // fine cell straddles two cells
    }
    if (!assigned) return false;
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (covered[i] != cells_[i].set.measure()) return false;
  }
  return true;
}

bool Partition::equals_mod_null(const Partition& o) const {
  // Representatives of the same mod-null cell may sort differently, so match
  // cells pairwise instead of positionally.
  if (cells_.size() != o.cells_.size()) return false;
  std::vector<bool> used(o.cells_.size(), false);
  for (const auto& c : cells_) {
    bool found = false;
    for (std::size_t j = 0; j < o.cells_.size(); ++j) {
      if (!used[j] && c.set.equals_mod_null(o.cells_[j].set)) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::string Partition::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) os << "; ";
    os << cells_[i].name << "=" << cells_[i].set;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Partition& p) {
  return os << p.str();
}

}  // namespace nds
