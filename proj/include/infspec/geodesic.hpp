#pragma once

// Intrinsic (geodesic) distances inside rasterized domains.

#include <span>
#include <vector>

#include "infspec/domains.hpp"
#include "infspec/raster.hpp"

namespace infspec {

enum class GeodesicSolver { FastMarching, Dijkstra8, Dijkstra16 };

struct GeodesicConfig {
  GeodesicSolver solver = GeodesicSolver::Dijkstra16;
  // Every stride-th boundary cell (scan order) seeds a field in the diameter
  // search.
  int boundary_sample_stride = 64;
};

// Worst-case relative overestimate of straight-line distances by the solver's
// stencil (FastMarching: empirical first-order bound).
double stencil_relative_error(GeodesicSolver solver);

// Arrival times from `source` through occupied cells. Diagonal and knight
// moves need the cells they sweep across to be occupied. Throws
// ConnectivityError if some occupied cell stays unreached.
DistanceField geodesic_field(const RasterDomain& raster, Cell source, const GeodesicConfig& cfg);

// Occupied cells with an exterior 4-neighbour, in scan order.
std::vector<Cell> boundary_cells(const RasterDomain& raster);

struct DiameterEstimate {
  double value = 0.0;
  double error = 0.0;
  Cell from;  // endpoints of the longest geodesic found
  Cell to;
  int fields_computed = 0;
};

// Longest geodesic between sampled boundary sources and any cell, refined by
// repeated sweeps from the current far endpoint. A lower bound on the
// discrete diameter; exact when stride is 1.
DiameterEstimate intrinsic_diameter(const RasterDomain& raster, const GeodesicConfig& cfg);
DiameterEstimate intrinsic_diameter_serial(const RasterDomain& raster, const GeodesicConfig& cfg);

// Exact diameter of a convex family member. Throws NotConvexError for the
// annulus.
double euclidean_diameter_convex(const DomainSpec& spec);

struct FarthestPair {
  Point2 a{};
  Point2 b{};
  double distance = 0.0;
};

// Convex hull plus rotating calipers; O(n log n).
FarthestPair point_set_diameter(std::span<const Point2> points);

std::vector<Point2> convex_hull(std::span<const Point2> points);

}  // namespace infspec
