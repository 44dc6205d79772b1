#pragma once

// Distance-cone ground states and their uniform deviation from the ball's
// cone.

#include <cstddef>

#include "infspec/domains.hpp"
#include "infspec/raster.hpp"

namespace infspec {

// v(x) = 1 - |x - center| / radius.
struct ConeFunction {
  Point2 center{0.0, 0.0};
  double radius = 1.0;

  double operator()(const Point2& x) const;
  double lipschitz() const { return 1.0 / radius; }
};

ConeFunction cone(Point2 center, double radius);

// u(x) = lambda_D dist(x, boundary), with lambda_D = 1 / numeric inradius so
// that max u = 1 on the grid.
struct DistanceEigenfunction {
  DistanceField distance;
  double lambda_D = 0.0;
  Cell chebyshev;

  double at(Cell c) const { return lambda_D * distance.at(c); }
  DistanceField values() const;
};

// Only families whose first eigenfunction is known to be the scaled distance
// (ball, stadium) are accepted; anything else throws NotCertifiedError.
DistanceEigenfunction distance_eigenfunction(const RasterDomain& raster, DomainKind family);
DistanceEigenfunction distance_eigenfunction(const DomainSpec& spec, double h);

struct Deviation {
  double value = 0.0;
  Cell argmax;
  std::size_t cells = 0;  // cells in the comparison region
};

// max |u - v| over occupied cells whose centres lie in the open ball
// B_r(v.center). Throws ResolutionError when that region is empty.
Deviation sup_deviation(const DistanceEigenfunction& u, const ConeFunction& v, double r);

// The cone aligned with the eigenfunction's Chebyshev centre.
ConeFunction aligned_cone(const DistanceEigenfunction& u, double r);

// Cone values on occupied cells, NaN elsewhere.
DistanceField cone_field(const GridFrame& frame, const RasterDomain& raster, const ConeFunction& v);

// |u - v| inside Omega and B_r, NaN elsewhere.
DistanceField deviation_field(const DistanceEigenfunction& u, const ConeFunction& v, double r);

}  // namespace infspec
