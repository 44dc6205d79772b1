#include "infspec/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "infspec/errors.hpp"

namespace infspec {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

DistanceField edt_impl(const RasterDomain& raster, bool parallel) {
  const GridFrame& f = raster.frame();
  // One ring of exterior cells around the grid so that every row and column
  // contains a feature.
  const int w = f.width + 2;
  const int ht = f.height + 2;
  std::vector<std::uint8_t> feature(static_cast<std::size_t>(w) * ht, 1);
  for (int j = 0; j < f.height; ++j)
    for (int i = 0; i < f.width; ++i)
      feature[static_cast<std::size_t>(j + 1) * w + (i + 1)] = raster.occupied(i, j) ? 0 : 1;

  const auto d2 = squared_feature_distance(w, ht, feature, parallel);

  DistanceField out{f, Provenance::Euclidean, std::vector<double>(f.size(), kNaN)};
  const double h = f.h;
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < f.height; ++j) {
    for (int i = 0; i < f.width; ++i) {
      if (!raster.occupied(i, j)) continue;
      const auto sq = d2[static_cast<std::size_t>(j + 1) * w + (i + 1)];
      out.values[f.index(i, j)] = h * std::sqrt(static_cast<double>(sq));
    }
  }
  return out;
}

}  // namespace

RasterDomain::RasterDomain(GridFrame frame, std::vector<std::uint8_t> occupancy)
    : frame_(frame), occupancy_(std::move(occupancy)) {
  if (!(frame_.h > 0.0) || !std::isfinite(frame_.h))
    throw ParameterError("grid spacing must be positive");
  if (frame_.width <= 0 || frame_.height <= 0)
    throw ParameterError("grid must have at least one cell");
  if (occupancy_.size() != frame_.size())
    throw ParameterError("occupancy size does not match the grid");
  occupied_count_ = static_cast<std::size_t>(
      std::count_if(occupancy_.begin(), occupancy_.end(), [](auto v) { return v != 0; }));
}

RasterDomain rasterize(const DomainSpec& spec, double h) {
  if (spec.dimension() != 2) throw ParameterError("only planar domains can be rasterized");
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("grid spacing must be positive");

  const Box2 box = spec.bounding_box();
  GridFrame frame;
  frame.h = h;
  const double nx = std::ceil((box.hi[0] - box.lo[0]) / h) + 4.0;
  const double ny = std::ceil((box.hi[1] - box.lo[1]) / h) + 4.0;
  if (nx * ny > static_cast<double>(kMaxRasterCells))
    throw ResolutionError("grid spacing too fine: raster would exceed the cell budget");
  frame.width = static_cast<int>(nx);
  frame.height = static_cast<int>(ny);
  // Centre the grid on the box so symmetric domains rasterize symmetrically.
  frame.origin = {0.5 * (box.lo[0] + box.hi[0]) - 0.5 * frame.width * h,
                  0.5 * (box.lo[1] + box.hi[1]) - 0.5 * frame.height * h};

  std::vector<std::uint8_t> occ(frame.size(), 0);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < frame.height; ++j)
    for (int i = 0; i < frame.width; ++i)
      occ[frame.index(i, j)] = contains(spec, frame.center(i, j)) ? 1 : 0;

  RasterDomain raster(frame, std::move(occ));
  if (raster.occupied_count() == 0)
    throw ResolutionError("resolution too coarse: no cell centre lies inside the domain");
  if (!is_4_connected(raster))
    throw ConnectivityError("resolution too coarse: rasterized domain is disconnected");
  return raster;
}

bool is_4_connected(const RasterDomain& raster) {
  const GridFrame& f = raster.frame();
  const auto occ = raster.occupancy();
  const auto first = std::find_if(occ.begin(), occ.end(), [](auto v) { return v != 0; });
  if (first == occ.end()) return false;

  std::vector<std::uint8_t> seen(f.size(), 0);
  std::queue<std::size_t> frontier;
  const auto start = static_cast<std::size_t>(first - occ.begin());
  seen[start] = 1;
  frontier.push(start);
  std::size_t reached = 1;
  constexpr int di[4] = {1, -1, 0, 0};
  constexpr int dj[4] = {0, 0, 1, -1};
  while (!frontier.empty()) {
    const Cell c = f.cell(frontier.front());
    frontier.pop();
    for (int n = 0; n < 4; ++n) {
      const int i = c.i + di[n];
      const int j = c.j + dj[n];
      if (!raster.occupied(i, j)) continue;
      const auto idx = f.index(i, j);
      if (seen[idx]) continue;
      seen[idx] = 1;
      ++reached;
      frontier.push(idx);
    }
  }
  return reached == raster.occupied_count();
}

std::vector<std::int64_t> squared_feature_distance(int width, int height,
                                                   std::span<const std::uint8_t> feature,
                                                   bool parallel) {
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (width <= 0 || height <= 0 || feature.size() != n)
    throw ParameterError("feature mask does not match the grid");
  if (std::none_of(feature.begin(), feature.end(), [](auto v) { return v != 0; }))
    throw ParameterError("distance transform needs at least one feature cell");

  // Column pass: vertical distance to the nearest feature in the column, or
  // `inf` (larger than any real distance) when the column has none.
  const std::int64_t inf = static_cast<std::int64_t>(width) + height;
  std::vector<std::int64_t> g(n);
  auto at = [width](int i, int j) {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(i);
  };

#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < width; ++i) {
    g[at(i, 0)] = feature[at(i, 0)] ? 0 : inf;
    for (int j = 1; j < height; ++j)
      g[at(i, j)] = feature[at(i, j)] ? 0 : std::min(inf, 1 + g[at(i, j - 1)]);
    for (int j = height - 2; j >= 0; --j)
      if (g[at(i, j + 1)] < g[at(i, j)]) g[at(i, j)] = 1 + g[at(i, j + 1)];
  }

  // Row pass: lower envelope of the parabolas (x - u)^2 + g(u)^2.
  std::vector<std::int64_t> out(n);
#pragma omp parallel if (parallel)
  {
    std::vector<int> s(static_cast<std::size_t>(width));
    std::vector<std::int64_t> t(static_cast<std::size_t>(width));
#pragma omp for schedule(static)
    for (int j = 0; j < height; ++j) {
      auto gv = [&](int u) { return g[at(u, j)]; };
      auto fval = [&](std::int64_t x, int u) {
        const std::int64_t dx = x - u;
        return dx * dx + gv(u) * gv(u);
      };
      auto sep = [&](int a, int b) {
        const std::int64_t num = static_cast<std::int64_t>(b) * b -
                                 static_cast<std::int64_t>(a) * a + gv(b) * gv(b) -
                                 gv(a) * gv(a);
        return floor_div(num, 2 * static_cast<std::int64_t>(b - a));
      };
      int q = 0;
      s[0] = 0;
      t[0] = 0;
      for (int u = 1; u < width; ++u) {
        while (q >= 0 && fval(t[q], s[q]) > fval(t[q], u)) --q;
        if (q < 0) {
          q = 0;
          s[0] = u;
        } else {
          const std::int64_t wpos = 1 + sep(s[q], u);
          if (wpos < width) {
            ++q;
            s[q] = u;
            t[q] = wpos;
          }
        }
      }
      for (int u = width - 1; u >= 0; --u) {
        out[at(u, j)] = fval(u, s[q]);
        if (u == t[q]) --q;
      }
    }
  }
  return out;
}

DistanceField edt(const RasterDomain& raster) { return edt_impl(raster, true); }

DistanceField edt_serial(const RasterDomain& raster) { return edt_impl(raster, false); }

FieldMax field_max(const DistanceField& field) {
  FieldMax best{-std::numeric_limits<double>::infinity(), {}};
  bool found = false;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    const double v = field.values[k];
    if (std::isnan(v)) continue;
    if (!found || v > best.value) {
      best = {v, field.frame.cell(k)};
      found = true;
    }
  }
  if (!found) throw ResolutionError("field has no occupied cells");
  return best;
}

Cell chebyshev_center(const DistanceField& field) {
  const double top = field_max(field).value;
  std::vector<std::size_t> ties;
  double sx = 0.0, sy = 0.0;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    if (field.values[k] != top) continue;
    ties.push_back(k);
    const Point2 p = field.frame.center(field.frame.cell(k));
    sx += p[0];
    sy += p[1];
  }
  const double cx = sx / static_cast<double>(ties.size());
  const double cy = sy / static_cast<double>(ties.size());
  std::size_t best = ties.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k : ties) {
    const Point2 p = field.frame.center(field.frame.cell(k));
    const double d = std::hypot(p[0] - cx, p[1] - cy);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return field.frame.cell(best);
}

InradiusEstimate numeric_inradius(const DistanceField& euclidean_field) {
  const Cell c = chebyshev_center(euclidean_field);
  return {euclidean_field.at(c), 2.0 * euclidean_field.frame.h * std::numbers::sqrt2, c};
}

InradiusEstimate numeric_inradius(const RasterDomain& raster) {
  return numeric_inradius(edt(raster));
}

double numeric_volume(const RasterDomain& raster) {
  const double h = raster.frame().h;
  return static_cast<double>(raster.occupied_count()) * h * h;
}

Point2 occupancy_centroid(const RasterDomain& raster) {
  const GridFrame& f = raster.frame();
  double sx = 0.0, sy = 0.0;
  for (int j = 0; j < f.height; ++j)
    for (int i = 0; i < f.width; ++i)
      if (raster.occupied(i, j)) {
        const Point2 p = f.center(i, j);
        sx += p[0];
        sy += p[1];
      }
  const auto n = static_cast<double>(raster.occupied_count());
  if (n == 0.0) throw ResolutionError("empty raster has no centroid");
  return {sx / n, sy / n};
}

}  // namespace infspec
