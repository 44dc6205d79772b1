#include "infspec/eigenfunc.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "infspec/errors.hpp"

namespace infspec {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_certified(DomainKind family) {
  if (family != DomainKind::Ball && family != DomainKind::Stadium)
    throw NotCertifiedError("no certified distance-cone eigenfunction for family '" +
                            std::string(to_string(family)) + "'");
}

bool in_open_ball(const Point2& x, const Point2& c, double r) {
  return std::hypot(x[0] - c[0], x[1] - c[1]) < r;
}
}  // namespace

double ConeFunction::operator()(const Point2& x) const {
  return 1.0 - std::hypot(x[0] - center[0], x[1] - center[1]) / radius;
}

ConeFunction cone(Point2 center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ParameterError("cone radius must be positive");
  return {center, radius};
}

DistanceField DistanceEigenfunction::values() const {
  DistanceField out = distance;
  for (double& v : out.values)
    if (!std::isnan(v)) v *= lambda_D;
  return out;
}

DistanceEigenfunction distance_eigenfunction(const RasterDomain& raster, DomainKind family) {
  require_certified(family);
  DistanceEigenfunction u;
  u.distance = edt(raster);
  const auto inradius = numeric_inradius(u.distance);
  u.lambda_D = 1.0 / inradius.value;
  u.chebyshev = inradius.center;
  return u;
}

DistanceEigenfunction distance_eigenfunction(const DomainSpec& spec, double h) {
  require_certified(spec.kind());
  return distance_eigenfunction(rasterize(spec, h), spec.kind());
}

ConeFunction aligned_cone(const DistanceEigenfunction& u, double r) {
  return cone(u.distance.frame.center(u.chebyshev), r);
}

Deviation sup_deviation(const DistanceEigenfunction& u, const ConeFunction& v, double r) {
  const GridFrame& f = u.distance.frame;
  // Per-row maxima, then a serial scan: same answer at any thread count.
  std::vector<Deviation> rows(static_cast<std::size_t>(f.height));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < f.height; ++j) {
    Deviation best{-1.0, {}, 0};
    for (int i = 0; i < f.width; ++i) {
      const double d = u.distance.at(i, j);
      if (std::isnan(d)) continue;
      const Point2 x = f.center(i, j);
      if (!in_open_ball(x, v.center, r)) continue;
      ++best.cells;
      const double diff = std::abs(u.lambda_D * d - v(x));
      if (diff > best.value) {
        best.value = diff;
        best.argmax = {i, j};
      }
    }
    rows[static_cast<std::size_t>(j)] = best;
  }
  Deviation out{-1.0, {}, 0};
  for (const auto& row : rows) {
    out.cells += row.cells;
    if (row.cells > 0 && row.value > out.value) {
      out.value = row.value;
      out.argmax = row.argmax;
    }
  }
  if (out.cells == 0) throw ResolutionError("domain and comparison ball do not intersect");
  return out;
}

DistanceField cone_field(const GridFrame& frame, const RasterDomain& raster, const ConeFunction& v) {
  DistanceField out{frame, Provenance::Euclidean, std::vector<double>(frame.size(), kNaN)};
  for (int j = 0; j < frame.height; ++j)
    for (int i = 0; i < frame.width; ++i)
      if (raster.occupied(i, j)) out.values[frame.index(i, j)] = v(frame.center(i, j));
  return out;
}

DistanceField deviation_field(const DistanceEigenfunction& u, const ConeFunction& v, double r) {
  const GridFrame& f = u.distance.frame;
  DistanceField out{f, Provenance::Euclidean, std::vector<double>(f.size(), kNaN)};
  for (int j = 0; j < f.height; ++j)
    for (int i = 0; i < f.width; ++i) {
      const double d = u.distance.at(i, j);
      const Point2 x = f.center(i, j);
      if (std::isnan(d) || !in_open_ball(x, v.center, r)) continue;
      out.values[f.index(i, j)] = std::abs(u.lambda_D * d - v(x));
    }
  return out;
}

}  // namespace infspec
