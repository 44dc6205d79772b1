#include "infspec/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <utility>

#include "infspec/errors.hpp"

namespace infspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kSqrt5 = std::sqrt(5.0);

struct Step {
  int di, dj;
  int kind;  // 0: axis (length 1), 1: diagonal (sqrt 2), 2: knight (sqrt 5)
};

constexpr Step kSteps8[] = {{1, 0, 0},  {-1, 0, 0}, {0, 1, 0},  {0, -1, 0},
                            {1, 1, 1},  {1, -1, 1}, {-1, 1, 1}, {-1, -1, 1}};

constexpr Step kKnight[] = {{1, 2, 2},  {-1, 2, 2}, {1, -2, 2}, {-1, -2, 2},
                            {2, 1, 2},  {2, -1, 2}, {-2, 1, 2}, {-2, -1, 2}};

// A move is admissible when the cells it sweeps through are occupied; the
// rule is symmetric under reversal, so the graph is undirected.
bool move_clear(const RasterDomain& r, int i, int j, const Step& s) {
  if (!r.occupied(i + s.di, j + s.dj)) return false;
  if (s.kind == 0) return true;
  if (s.kind == 1) return r.occupied(i + s.di, j) && r.occupied(i, j + s.dj);
  if (std::abs(s.dj) == 2) {
    const int mid = j + s.dj / 2;
    return r.occupied(i, mid) && r.occupied(i + s.di, mid);
  }
  const int mid = i + s.di / 2;
  return r.occupied(mid, j) && r.occupied(mid, j + s.dj);
}

// Path lengths are kept as step counts so that the length of a path does not
// depend on the order its steps were summed in.
struct StepCounts {
  std::int32_t axis = 0, diag = 0, knight = 0;
  double length() const {
    return static_cast<double>(axis) + static_cast<double>(diag) * std::numbers::sqrt2 +
           static_cast<double>(knight) * kSqrt5;
  }
};

using HeapItem = std::pair<double, std::size_t>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

DistanceField dijkstra(const RasterDomain& raster, Cell source, bool knight_moves) {
  const GridFrame& f = raster.frame();
  std::vector<double> key(f.size(), kInf);
  std::vector<StepCounts> counts(f.size());
  std::vector<std::uint8_t> done(f.size(), 0);

  MinHeap heap;
  const auto s = f.index(source.i, source.j);
  key[s] = 0.0;
  heap.push({0.0, s});

  std::vector<Step> steps(std::begin(kSteps8), std::end(kSteps8));
  if (knight_moves) steps.insert(steps.end(), std::begin(kKnight), std::end(kKnight));

  while (!heap.empty()) {
    const auto [k, u] = heap.top();
    heap.pop();
    if (done[u] || k > key[u]) continue;
    done[u] = 1;
    const Cell c = f.cell(u);
    for (const Step& st : steps) {
      if (!move_clear(raster, c.i, c.j, st)) continue;
      const auto v = f.index(c.i + st.di, c.j + st.dj);
      if (done[v]) continue;
      StepCounts next = counts[u];
      if (st.kind == 0) ++next.axis;
      else if (st.kind == 1) ++next.diag;
      else ++next.knight;
      const double len = next.length();
      if (len < key[v]) {
        key[v] = len;
        counts[v] = next;
        heap.push({len, v});
      }
    }
  }

  DistanceField out{f, Provenance::Geodesic, std::vector<double>(f.size(), kNaN)};
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (!raster.occupancy()[idx]) continue;
    if (!done[idx]) throw ConnectivityError("geodesic front did not reach every occupied cell");
    out.values[idx] = f.h * key[idx];
  }
  return out;
}

// First-order upwind fast marching, unit speed, in cell units.
DistanceField fast_marching(const RasterDomain& raster, Cell source) {
  const GridFrame& f = raster.frame();
  std::vector<double> t(f.size(), kInf);
  std::vector<std::uint8_t> known(f.size(), 0);
  MinHeap heap;
  const auto s = f.index(source.i, source.j);
  t[s] = 0.0;
  heap.push({0.0, s});

  auto known_value = [&](int i, int j) {
    if (!raster.occupied(i, j)) return kInf;
    const auto idx = f.index(i, j);
    return known[idx] ? t[idx] : kInf;
  };

  auto solve = [&](int i, int j) {
    const double a = std::min(known_value(i - 1, j), known_value(i + 1, j));
    const double b = std::min(known_value(i, j - 1), known_value(i, j + 1));
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    if (hi == kInf || hi - lo >= 1.0) return lo + 1.0;
    const double diff = hi - lo;
    return 0.5 * (lo + hi + std::sqrt(2.0 - diff * diff));
  };

  constexpr int di[4] = {1, -1, 0, 0};
  constexpr int dj[4] = {0, 0, 1, -1};
  while (!heap.empty()) {
    const auto [k, u] = heap.top();
    heap.pop();
    if (known[u] || k > t[u]) continue;
    known[u] = 1;
    const Cell c = f.cell(u);
    for (int n = 0; n < 4; ++n) {
      const int i = c.i + di[n];
      const int j = c.j + dj[n];
      if (!raster.occupied(i, j)) continue;
      const auto v = f.index(i, j);
      if (known[v]) continue;
      const double cand = solve(i, j);
      if (cand < t[v]) {
        t[v] = cand;
        heap.push({cand, v});
      }
    }
  }

  DistanceField out{f, Provenance::Geodesic, std::vector<double>(f.size(), kNaN)};
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (!raster.occupancy()[idx]) continue;
    if (!known[idx]) throw ConnectivityError("geodesic front did not reach every occupied cell");
    out.values[idx] = f.h * t[idx];
  }
  return out;
}

struct SourceResult {
  double value = -1.0;
  Cell to;
};

SourceResult farthest_from(const RasterDomain& raster, Cell source, const GeodesicConfig& cfg) {
  const auto m = field_max(geodesic_field(raster, source, cfg));
  return {m.value, m.cell};
}

DiameterEstimate diameter_impl(const RasterDomain& raster, const GeodesicConfig& cfg,
                               bool parallel) {
  if (cfg.boundary_sample_stride < 1)
    throw ParameterError("boundary sample stride must be at least 1");
  const auto boundary = boundary_cells(raster);
  if (boundary.empty()) throw ResolutionError("raster has no boundary cells");

  std::vector<Cell> sources;
  for (std::size_t k = 0; k < boundary.size(); k += static_cast<std::size_t>(cfg.boundary_sample_stride))
    sources.push_back(boundary[k]);

  std::vector<SourceResult> results(sources.size());
  const auto count = static_cast<std::ptrdiff_t>(sources.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t k = 0; k < count; ++k)
    results[static_cast<std::size_t>(k)] =
        farthest_from(raster, sources[static_cast<std::size_t>(k)], cfg);

  // Deterministic reduction: strict '>' keeps the lowest source index on ties.
  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k)
    if (results[k].value > results[best].value) best = k;

  DiameterEstimate est;
  est.value = results[best].value;
  est.from = sources[best];
  est.to = results[best].to;
  est.fields_computed = static_cast<int>(sources.size());

  // Sweep from the far endpoint until the length stops growing.
  for (int sweep = 0; sweep < 8; ++sweep) {
    const auto next = farthest_from(raster, est.to, cfg);
    ++est.fields_computed;
    if (!(next.value > est.value)) break;
    est.from = est.to;
    est.to = next.to;
    est.value = next.value;
  }
  est.error = est.value * stencil_relative_error(cfg.solver) +
              2.0 * raster.frame().h * std::numbers::sqrt2;
  return est;
}

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

double dist(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

double stencil_relative_error(GeodesicSolver solver) {
  switch (solver) {
    case GeodesicSolver::Dijkstra8: return 1.0 / std::cos(std::numbers::pi / 8.0) - 1.0;
    case GeodesicSolver::Dijkstra16: return 1.0 / std::cos(0.5 * std::atan(0.5)) - 1.0;
    case GeodesicSolver::FastMarching: return 0.02;
  }
  return 0.0;
}

DistanceField geodesic_field(const RasterDomain& raster, Cell source, const GeodesicConfig& cfg) {
  if (!raster.occupied(source.i, source.j))
    throw ParameterError("geodesic source must be an occupied cell");
  switch (cfg.solver) {
    case GeodesicSolver::FastMarching: return fast_marching(raster, source);
    case GeodesicSolver::Dijkstra8: return dijkstra(raster, source, false);
    case GeodesicSolver::Dijkstra16: return dijkstra(raster, source, true);
  }
  throw ParameterError("unknown geodesic solver");
}

std::vector<Cell> boundary_cells(const RasterDomain& raster) {
  const GridFrame& f = raster.frame();
  std::vector<Cell> out;
  for (int j = 0; j < f.height; ++j)
    for (int i = 0; i < f.width; ++i)
      if (raster.occupied(i, j) &&
          (!raster.occupied(i - 1, j) || !raster.occupied(i + 1, j) ||
           !raster.occupied(i, j - 1) || !raster.occupied(i, j + 1)))
        out.push_back({i, j});
  return out;
}

DiameterEstimate intrinsic_diameter(const RasterDomain& raster, const GeodesicConfig& cfg) {
  return diameter_impl(raster, cfg, true);
}

DiameterEstimate intrinsic_diameter_serial(const RasterDomain& raster, const GeodesicConfig& cfg) {
  return diameter_impl(raster, cfg, false);
}

double euclidean_diameter_convex(const DomainSpec& spec) {
  if (!spec.is_convex()) throw NotConvexError("euclidean diameter shortcut needs a convex domain");
  return closed_form_diameter(spec);
}

std::vector<Point2> convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  // Andrew's monotone chain, counter-clockwise, collinear points dropped.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

FarthestPair point_set_diameter(std::span<const Point2> points) {
  if (points.empty()) throw ParameterError("diameter of an empty point set");
  const auto hull = convex_hull(points);
  FarthestPair best{hull.front(), hull.front(), 0.0};
  const std::size_t n = hull.size();
  if (n == 1) return best;
  if (n == 2) return {hull[0], hull[1], dist(hull[0], hull[1])};

  std::size_t j = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ni = (i + 1) % n;
    // Advance the antipodal pointer while the triangle area grows.
    while (std::abs(cross(hull[i], hull[ni], hull[(j + 1) % n])) >
           std::abs(cross(hull[i], hull[ni], hull[j])))
      j = (j + 1) % n;
    for (const auto& cand : {hull[i], hull[ni]}) {
      const double d = dist(cand, hull[j]);
      if (d > best.distance) best = {cand, hull[j], d};
    }
  }
  return best;
}

}  // namespace infspec
