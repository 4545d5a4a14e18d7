#include "ndsent/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>

#include "ndsent/errors.hpp"

namespace nds {

namespace {

constexpr double kTieMargin = 9.094947017729282e-13;  // 2^-40

struct OrbitTable {
  // exact[j][i] = i-th orbit point of grid point j; approx mirrors in double.
  std::vector<std::vector<Rational>> exact;
  std::vector<std::vector<double>> approx;
  bool circle = false;
};

double arc_approx(double a, double b) {
  double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

Rational arc_exact(const Rational& a, const Rational& b) {
  Rational d = (a - b).abs();
  return min(d, Rational(1) - d);
}

// Whether the orbit distance max_i d(x_i, y_i) satisfies `dist > thr` (when
// strict) or `dist >= thr`.  Double fast path with exact fallback on ties.
bool orbit_dist_exceeds(const OrbitTable& t, std::size_t a, std::size_t b,
                        const Rational& thr, double thr_d, bool strict) {
  const auto& xa = t.approx[a];
  const auto& xb = t.approx[b];
  bool ambiguous = false;
  for (std::size_t i = 0; i < xa.size(); ++i) {
    double d = t.circle ? arc_approx(xa[i], xb[i]) : std::fabs(xa[i] - xb[i]);
    if (d > thr_d + kTieMargin) return true;
    if (d > thr_d - kTieMargin) ambiguous = true;
  }
  if (!ambiguous) return false;
  const auto& ea = t.exact[a];
  const auto& eb = t.exact[b];
  for (std::size_t i = 0; i < ea.size(); ++i) {
    Rational d = t.circle ? arc_exact(ea[i], eb[i]) : (ea[i] - eb[i]).abs();
    if (strict ? d > thr : d >= thr) return true;
  }
  return false;
}

}  // namespace

double SpanningReport::lower_bits() const {
  if (n <= 0 || separated_lower <= 0) return 0.0;
  return std::log2(double(separated_lower)) / double(n);
}

double SpanningReport::upper_bits() const {
  if (n <= 0 || spanning_upper <= 0) return 0.0;
  return std::log2(double(spanning_upper)) / double(n);
}

SpanningReport spanning_bounds(const NDSystem& sys, long long n,
                               const Rational& eps, const Rational& grid_step,
                               Budget& budget, int workers,
                               const std::string& system_id) {
  if (n < 1) throw UsageError("orbit depth n must be >= 1");
  if (eps.sign() <= 0) throw UsageError("eps must be positive");
  if (grid_step.sign() <= 0) throw UsageError("grid step must be positive");
  if (grid_step > eps) {
    throw UsageError("grid step " + grid_step.str() +
                     " is coarser than eps " + eps.str());
  }
  if (workers < 1) workers = 1;

  // Grid 0, step, 2*step, ..., plus the right endpoint.
  std::vector<Rational> grid;
  for (Rational x(0); x < Rational(1); x += grid_step) grid.push_back(x);
  grid.push_back(Rational(1));
  const std::size_t G = grid.size();
  budget.charge(static_cast<std::int64_t>(G) * n);

  OrbitTable table;
  table.circle = sys.space() == SpaceKind::circle;
  table.exact.resize(G);
  table.approx.resize(G);
  auto fill = [&](std::size_t begin, std::size_t end) {
    Budget scratch;  // evaluation cost charged above, once
    for (std::size_t j = begin; j < end; ++j) {
      auto& ex = table.exact[j];
      auto& ap = table.approx[j];
      ex.reserve(n);
      ap.reserve(n);
      Rational x = grid[j];
      for (long long i = 0; i < n; ++i) {
        ex.push_back(x);
        ap.push_back(x.to_double());
        if (i + 1 < n) x = sys.map_at(Integer(static_cast<long>(i)))(x);
      }
    }
  };
  if (workers == 1 || G < 64) {
    fill(0, G);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (G + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      std::size_t b = std::min(G, w * chunk), e = std::min(G, (w + 1) * chunk);
      if (b < e) pool.emplace_back(fill, b, e);
    }
    for (auto& th : pool) th.join();
  }

  SpanningReport rep;
  rep.system_id = system_id;
  rep.n = n;
  rep.eps = eps;
  rep.grid_step = grid_step;

  // Lower bound: ascending greedy scan keeping points whose orbit distance to
  // every kept point is > 2ε.  Distinct kept points cannot share one orbit
  // ε-ball, so at least this many balls are needed.
  Rational two_eps = eps * Rational(2);
  double two_eps_d = two_eps.to_double();
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < G; ++j) {
    bool ok = true;
    for (auto k : kept) {
      if (!orbit_dist_exceeds(table, j, k, two_eps, two_eps_d, true)) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(j);
  }
  rep.separated_lower = static_cast<long long>(kept.size());

  // Upper bound: greedy cover of the grid by orbit ε'-balls, where ε' is ε
  // minus the worst-case orbit deviation of an off-grid point from its
  // nearest grid point.  With that slack the chosen centers ε-span the whole
  // space; without it (ε' <= 0) the result only covers the grid proxy.
  Rational stretch(1);
  for (const auto& L : sys.lipschitz_per_step(Integer(0), n - 1)) {
    stretch *= max(L, Rational(1));
    if (stretch > Rational(Integer(1) << 128, 1)) break;  // hopeless anyway
  }
  Rational slack = stretch * grid_step / Rational(2);
  Rational ball = eps - slack;
  rep.certified = ball.sign() > 0;
  if (!rep.certified) ball = eps;
  double ball_d = ball.to_double();

  std::vector<char> covered(G, 0);
  long long centers = 0;
  std::size_t first_uncovered = 0;
  while (first_uncovered < G) {
    // Farthest grid point still within ball distance of the first uncovered
    // point; its ball is guaranteed to cover that point.
    std::size_t center = first_uncovered;
    for (std::size_t c = first_uncovered + 1; c < G; ++c) {
      if (!orbit_dist_exceeds(table, first_uncovered, c, ball, ball_d, false)) {
        center = c;
      } else if (!table.circle && grid[c] - grid[first_uncovered] > ball) {
        break;  // statically out of range; orbit distance >= static distance
      }
    }
    ++centers;
    for (std::size_t j = first_uncovered; j < G; ++j) {
      if (!covered[j] &&
          !orbit_dist_exceeds(table, center, j, ball, ball_d, false)) {
        covered[j] = 1;
      }
    }
    while (first_uncovered < G && covered[first_uncovered]) ++first_uncovered;
  }
  rep.spanning_upper = centers;
  return rep;
}

std::vector<SpanningTrace> entropy_from_spanning(
    const std::vector<SpanningReport>& reports) {
  if (reports.empty()) return {};
  const std::string& id = reports.front().system_id;
  for (const auto& r : reports) {
    if (r.system_id != id) {
      throw UsageError("spanning reports mix systems '" + id + "' and '" +
                       r.system_id + "'");
    }
  }
  std::map<Rational, std::vector<const SpanningReport*>> by_eps;
  for (const auto& r : reports) by_eps[r.eps].push_back(&r);
  std::vector<SpanningTrace> out;
  for (auto& [eps, group] : by_eps) {
    std::sort(group.begin(), group.end(),
              [](const SpanningReport* a, const SpanningReport* b) {
                return a->n < b->n;
              });
    SpanningTrace tr;
    tr.eps = eps;
    for (const auto* r : group) {
      tr.rows.push_back({r->n, r->separated_lower, r->spanning_upper,
                         r->lower_bits(), r->upper_bits(), r->certified});
    }
    out.push_back(std::move(tr));
  }
  // Ascending ε order: finest resolution first.
  return out;
}

}  // namespace nds
