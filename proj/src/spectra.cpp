#include "infspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "infspec/eigenfunc.hpp"
#include "infspec/errors.hpp"

namespace infspec {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

// Inclusive lattice index range of cells whose centres may lie in the ball.
struct IndexRange {
  int i0, i1, j0, j1;
};

IndexRange ball_index_range(const GridFrame& f, const BallSpec& b) {
  auto lo = [&](double c, double o) {
    return static_cast<int>(std::floor((c - b.radius - o) / f.h - 0.5)) - 1;
  };
  auto hi = [&](double c, double o) {
    return static_cast<int>(std::ceil((c + b.radius - o) / f.h - 0.5)) + 1;
  };
  return {lo(b.center[0], f.origin[0]), hi(b.center[0], f.origin[0]), lo(b.center[1], f.origin[1]),
          hi(b.center[1], f.origin[1])};
}

bool in_ball(const GridFrame& f, const BallSpec& b, int i, int j) {
  const Point2 p = f.center(i, j);
  return std::hypot(p[0] - b.center[0], p[1] - b.center[1]) < b.radius;
}

double symdiff_impl(const RasterDomain& raster, const BallSpec& ball, bool parallel) {
  const GridFrame& f = raster.frame();
  const IndexRange rg = ball_index_range(f, ball);
  // |A sym B| = |A| + |B| - 2 |A and B|; only the ball's box needs a scan.
  std::int64_t in_b = 0, both = 0;
#pragma omp parallel for schedule(static) reduction(+ : in_b, both) if (parallel)
  for (int j = rg.j0; j <= rg.j1; ++j)
    for (int i = rg.i0; i <= rg.i1; ++i)
      if (in_ball(f, ball, i, j)) {
        ++in_b;
        if (raster.occupied(i, j)) ++both;
      }
  const auto count = static_cast<std::int64_t>(raster.occupied_count()) + in_b - 2 * both;
  return static_cast<double>(count) * f.h * f.h;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t k = 1; k < v.size(); ++k)
    if (!(v[k] < v[k - 1])) return false;
  return true;
}

}  // namespace

EigenPair eigenpair_closed_form(const DomainSpec& spec) {
  EigenPair p;
  p.lambda_D = 1.0 / closed_form_inradius(spec);
  p.lambda_N = 2.0 / closed_form_diameter(spec);
  p.method = EigenMethod::ClosedForm;
  return p;
}

EigenPair eigenpair_numeric(const RasterDomain& raster, const GeodesicConfig& cfg) {
  const auto inr = numeric_inradius(raster);
  const auto diam = intrinsic_diameter(raster, cfg);
  EigenPair p;
  p.method = EigenMethod::Numeric;
  p.h = raster.frame().h;
  p.lambda_D = 1.0 / inr.value;
  p.lambda_N = 2.0 / diam.value;
  // First-order propagation of the length error bars.
  p.error_bars = {p.lambda_D * inr.error / inr.value, p.lambda_N * diam.error / diam.value};
  return p;
}

EigenPair eigenpair_numeric(const DomainSpec& spec, double h, const GeodesicConfig& cfg) {
  return eigenpair_numeric(rasterize(spec, h), cfg);
}

Deltas deltas(const EigenPair& pair, double r) {
  if (!(r > 0.0)) throw ParameterError("reference radius must be positive");
  return {std::abs(pair.lambda_D - 1.0 / r), std::abs(pair.lambda_N - 1.0 / r)};
}

SandwichRadii sandwich_radii(double r, double delta1, double delta2) {
  if (!(r > 0.0)) throw ParameterError("reference radius must be positive");
  if (delta1 < 0.0 || delta2 < 0.0) throw ParameterError("deltas must be non-negative");
  const double q = delta2 * r;
  if (q >= 1.0) throw BoundVacuousError("delta2 r >= 1: outer ball is unbounded");
  return {r / (delta1 * r + 1.0), (r + q) / (1.0 - q), r / (1.0 - q)};
}

double symdiff_bound_constant(int n, double r, double delta1, double delta2) {
  if (n < 2) throw ParameterError("dimension must be at least 2");
  if (delta1 < 0.0 || delta2 < 0.0) throw ParameterError("deltas must be non-negative");
  const double dirichlet = std::pow(delta1 * r + 1.0, n) - 1.0;
  const double neumann = (n - 1) * delta2;
  return unit_ball_volume(n) * std::max(dirichlet, neumann);
}

double symdiff_bound(int n, double r, double delta1, double delta2) {
  return symdiff_bound_constant(n, r, delta1, delta2) * std::pow(r, n);
}

double symmetric_difference(const RasterDomain& raster, const BallSpec& ball) {
  return symdiff_impl(raster, ball, true);
}

double symmetric_difference_serial(const RasterDomain& raster, const BallSpec& ball) {
  return symdiff_impl(raster, ball, false);
}

FraenkelResult fraenkel_asymmetry(const RasterDomain& raster, double r,
                                  const FraenkelSearch& search) {
  if (!(r > 0.0)) throw ParameterError("reference radius must be positive");
  const double area = numeric_volume(raster);
  FraenkelResult best{std::numeric_limits<double>::infinity(), {}, 0};
  auto consider = [&](Point2 c) {
    const double v = symmetric_difference(raster, {c, r}) / area;
    ++best.evaluations;
    if (v < best.value) {
      best.value = v;
      best.center = c;
      return true;
    }
    return false;
  };

  const Point2 centroid = occupancy_centroid(raster);
  const auto field = edt(raster);
  consider(centroid);
  consider(field.frame.center(chebyshev_center(field)));

  const int m = std::max(search.coarse_points, 1);
  const double span = search.coarse_span * r;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (m == 1) break;
      const double tx = -span + 2.0 * span * a / (m - 1);
      const double ty = -span + 2.0 * span * b / (m - 1);
      consider({centroid[0] + tx, centroid[1] + ty});
    }

  // Compass search around the incumbent.
  const double h = raster.frame().h;
  double step = m > 1 ? span / (m - 1) : 0.25 * r;
  while (step >= search.min_step_cells * h) {
    bool moved = false;
    const Point2 c = best.center;
    for (const Point2 d : {Point2{step, 0.0}, Point2{-step, 0.0}, Point2{0.0, step}, Point2{0.0, -step}})
      moved = consider({c[0] + d[0], c[1] + d[1]}) || moved;
    if (!moved) step *= 0.5;
  }
  return best;
}

double hausdorff_distance(const RasterDomain& raster, const BallSpec& ball) {
  const GridFrame& f = raster.frame();
  const IndexRange rg = ball_index_range(f, ball);
  const int i0 = std::min(0, rg.i0) - 1, i1 = std::max(f.width - 1, rg.i1) + 1;
  const int j0 = std::min(0, rg.j0) - 1, j1 = std::max(f.height - 1, rg.j1) + 1;
  const int w = i1 - i0 + 1, ht = j1 - j0 + 1;
  const auto n = static_cast<std::size_t>(w) * static_cast<std::size_t>(ht);

  std::vector<std::uint8_t> in_a(n, 0), in_b(n, 0);
  bool any_b = false;
  for (int j = 0; j < ht; ++j)
    for (int i = 0; i < w; ++i) {
      const auto k = static_cast<std::size_t>(j) * w + i;
      in_a[k] = raster.occupied(i + i0, j + j0) ? 1 : 0;
      in_b[k] = in_ball(f, ball, i + i0, j + j0) ? 1 : 0;
      any_b = any_b || in_b[k];
    }
  if (raster.occupied_count() == 0 || !any_b)
    throw ResolutionError("Hausdorff distance needs two non-empty cell sets");

  const auto to_a = squared_feature_distance(w, ht, in_a);
  const auto to_b = squared_feature_distance(w, ht, in_b);
  std::int64_t worst = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (in_a[k]) worst = std::max(worst, to_b[k]);
    if (in_b[k]) worst = std::max(worst, to_a[k]);
  }
  return f.h * std::sqrt(static_cast<double>(worst));
}

double closed_form_hausdorff(const DomainSpec& spec, double r) {
  switch (spec.kind()) {
    case DomainKind::Ball:
      return std::abs(spec.as<Ball>().radius - r);
    case DomainKind::Annulus: {
      const auto& a = spec.as<Annulus>();
      return std::max({a.outer_radius - r, a.inner_radius, r - a.outer_radius});
    }
    case DomainKind::Stadium: {
      const auto& s = spec.as<Stadium>();
      return std::max({0.5 * s.ell + s.eps - r, r - s.eps, 0.0});
    }
    case DomainKind::RegularPolygon: {
      const auto& p = spec.as<RegularPolygon>();
      return std::max({polygon_circumradius(p) - r, r - p.apothem, 0.0});
    }
    case DomainKind::Ellipse: {
      const auto& axes = spec.as<Ellipse>().axes;
      const auto [lo, hi] = std::minmax_element(axes.begin(), axes.end());
      return std::max({*hi - r, r - *lo, 0.0});
    }
  }
  return 0.0;
}

SandwichCheck verify_sandwich(const RasterDomain& raster, double r, const Deltas& d) {
  SandwichCheck out;
  out.deltas = d;
  out.radii = sandwich_radii(r, d.delta1, d.delta2);
  const GridFrame& f = raster.frame();
  out.slack = 2.0 * f.h * sqrt2;

  const auto field = edt(raster);
  const auto inr = numeric_inradius(field);
  out.inner_center = f.center(inr.center);
  out.inradius = inr.value;

  // Inner: every lattice cell centre within inner - slack is occupied.
  const double rho = out.radii.inner - out.slack;
  out.inner_pass = true;
  if (rho > 0.0) {
    const BallSpec probe{out.inner_center, rho};
    const IndexRange rg = ball_index_range(f, probe);
    for (int j = rg.j0; j <= rg.j1 && out.inner_pass; ++j)
      for (int i = rg.i0; i <= rg.i1; ++i)
        if (in_ball(f, probe, i, j) && !raster.occupied(i, j)) {
          out.inner_pass = false;
          break;
        }
  }

  // Outer candidates.
  std::vector<Point2> boundary_pts;
  for (const Cell c : boundary_cells(raster)) boundary_pts.push_back(f.center(c));
  const auto pair = point_set_diameter(boundary_pts);
  const Point2 midpoint{0.5 * (pair.a[0] + pair.b[0]), 0.5 * (pair.a[1] + pair.b[1])};

  const std::pair<const char*, Point2> candidates[] = {
      {"chebyshev", out.inner_center},
      {"centroid", occupancy_centroid(raster)},
      {"diameter_midpoint", midpoint},
  };
  const double limit = out.radii.outer_lemma + out.slack;
  for (const auto& [label, c] : candidates) {
    double far = 0.0;
    for (const Point2& p : boundary_pts) far = std::max(far, std::hypot(p[0] - c[0], p[1] - c[1]));
    out.outer_trials.push_back({label, c, far, far <= limit});
  }
  const auto passing = std::find_if(out.outer_trials.begin(), out.outer_trials.end(),
                                    [](const CenterTrial& t) { return t.pass; });
  out.outer_pass = passing != out.outer_trials.end();
  out.outer_center = out.outer_pass ? passing->center
                                    : std::min_element(out.outer_trials.begin(),
                                                       out.outer_trials.end(),
                                                       [](const auto& a, const auto& b) {
                                                         return a.farthest < b.farthest;
                                                       })
                                          ->center;
  return out;
}

SandwichCheck verify_sandwich(const DomainSpec& spec, double r, double h) {
  return verify_sandwich(rasterize(spec, h), r, deltas(eigenpair_closed_form(spec), r));
}

StabilityReport stability_report(const DomainSpec& spec, double r, double h,
                                 const ReportOptions& opts) {
  const auto raster = rasterize(spec, h);
  const Deltas d = opts.deltas == DeltaSource::ClosedForm
                       ? deltas(eigenpair_closed_form(spec), r)
                       : deltas(eigenpair_numeric(raster, opts.geodesic), r);

  StabilityReport rep;
  rep.r = r;
  rep.h = h;
  rep.delta1 = d.delta1;
  rep.delta2 = d.delta2;
  rep.sandwich = verify_sandwich(raster, r, d);
  rep.inner_radius = rep.sandwich.radii.inner;
  rep.outer_radius_thm = rep.sandwich.radii.outer_thm;
  rep.outer_radius_lemma = rep.sandwich.radii.outer_lemma;
  rep.symdiff_inner = symmetric_difference(raster, {rep.sandwich.inner_center, rep.inner_radius});
  rep.symdiff_outer =
      symmetric_difference(raster, {rep.sandwich.outer_center, rep.outer_radius_lemma});
  rep.bound_C = symdiff_bound_constant(2, r, d.delta1, d.delta2);
  if (opts.fraenkel) {
    const auto fr = fraenkel_asymmetry(raster, r, opts.fraenkel_search);
    rep.fraenkel = fr.value;
    rep.fraenkel_center = fr.center;
  }
  rep.hausdorff = hausdorff_distance(raster, {spec.center2(), r});

  rep.flags.inner_ball = rep.sandwich.inner_pass;
  rep.flags.outer_ball = rep.sandwich.outer_pass;
  rep.flags.symdiff_inner_bound = rep.symdiff_inner <= rep.bound_C * r * r + 5.0 * h;
  rep.flags.symdiff_outer_printed = rep.symdiff_outer <= unit_ball_volume(2) * d.delta2 * r * r;
  rep.flags.hausdorff_bound =
      rep.hausdorff <= std::max(r - rep.inner_radius, rep.outer_radius_lemma - r) + 2.0 * h;
  return rep;
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Polygon: return "polygon";
    case FamilyKind::Ellipse: return "ellipse";
    case FamilyKind::Stadium4: return "stadium4";
  }
  return "unknown";
}

FamilyKind family_kind_from_string(std::string_view name) {
  if (name == "polygon") return FamilyKind::Polygon;
  if (name == "ellipse") return FamilyKind::Ellipse;
  if (name == "stadium4") return FamilyKind::Stadium4;
  throw ParameterError("unknown family '" + std::string(name) + "'");
}

DomainSpec family_member(const Family& family, int k, double r) {
  if (k < 1) throw ParameterError("family index must be positive");
  ShapeParams shape;
  switch (family.kind) {
    case FamilyKind::Polygon:
      shape.sides = k;
      return normalize_to_ball_volume(DomainKind::RegularPolygon, shape, r);
    case FamilyKind::Ellipse:
      shape.axis_ratios = {family.ellipse_ratio(k), 1.0};
      return normalize_to_ball_volume(DomainKind::Ellipse, shape, r);
    case FamilyKind::Stadium4:
      shape.ell = 1.0 / k;
      return normalize_to_ball_volume(DomainKind::Stadium, shape, r);
  }
  throw ParameterError("unknown family");
}

SweepResult sweep(const Family& family, double r, const std::vector<int>& indices,
                  const SweepOptions& opts) {
  SweepResult out;
  out.family = family;
  out.r = r;
  out.rows.reserve(indices.size());
  for (int k : indices) {
    SweepRow row;
    row.index = k;
    row.spec = family_member(family, k, r);
    row.closed = deltas(eigenpair_closed_form(row.spec), r);
    row.hausdorff_closed = closed_form_hausdorff(row.spec, r);
    out.rows.push_back(std::move(row));
  }

  if (opts.h) {
    const double h = *opts.h;
    // Members are independent; the parallelism lives inside the kernels.
    for (auto& row : out.rows) {
      const auto raster = rasterize(row.spec, h);
      if (opts.numeric_deltas) row.numeric = deltas(eigenpair_numeric(raster, opts.geodesic), r);
      row.hausdorff_numeric = hausdorff_distance(raster, {row.spec.center2(), r});
      if (opts.fraenkel) row.fraenkel = fraenkel_asymmetry(raster, r).value;
      if (opts.eigenfunction && (row.spec.kind() == DomainKind::Ball ||
                                 row.spec.kind() == DomainKind::Stadium)) {
        const auto u = distance_eigenfunction(raster, row.spec.kind());
        row.sup_deviation = sup_deviation(u, aligned_cone(u, r), r).value;
      }
    }
  }

  std::vector<double> d1, d2, dh, dev;
  for (const auto& row : out.rows) {
    d1.push_back(row.closed.delta1);
    d2.push_back(row.closed.delta2);
    dh.push_back(row.hausdorff_closed);
    if (row.sup_deviation) dev.push_back(*row.sup_deviation);
  }
  out.summary.delta1_strictly_decreasing = strictly_decreasing(d1);
  out.summary.delta2_strictly_decreasing = strictly_decreasing(d2);
  out.summary.hausdorff_strictly_decreasing = strictly_decreasing(dh);
  out.summary.last_hausdorff = dh.empty() ? 0.0 : dh.back();
  if (!dev.empty() && dev.size() == out.rows.size()) {
    bool ok = true;
    for (std::size_t k = 1; k < dev.size(); ++k) ok = ok && dev[k] <= dev[k - 1];
    out.summary.sup_deviation_nonincreasing = ok;
  }
  return out;
}

}  // namespace infspec
