#pragma once

// Uniform-grid rasterization of planar domains and the exact Euclidean
// distance transform.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infspec/domains.hpp"

namespace infspec {

struct Cell {
  int i = 0;  // column, along x
  int j = 0;  // row, along y
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Cell (i, j) covers [origin + i h, origin + (i+1) h) along each axis and is
// represented by its centre.
struct GridFrame {
  Point2 origin{0.0, 0.0};
  double h = 1.0;
  int width = 0;
  int height = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(i);
  }
  Cell cell(std::size_t index) const {
    return {static_cast<int>(index % static_cast<std::size_t>(width)),
            static_cast<int>(index / static_cast<std::size_t>(width))};
  }
  bool in_bounds(int i, int j) const { return i >= 0 && j >= 0 && i < width && j < height; }
  Point2 center(int i, int j) const {
    return {origin[0] + (i + 0.5) * h, origin[1] + (j + 0.5) * h};
  }
  Point2 center(Cell c) const { return center(c.i, c.j); }
};

class RasterDomain {
 public:
  // Occupancy is row-major, one byte per cell (non-zero = inside). Only the
  // shape is checked here; rasterize() also enforces connectivity.
  RasterDomain(GridFrame frame, std::vector<std::uint8_t> occupancy);

  const GridFrame& frame() const { return frame_; }
  std::span<const std::uint8_t> occupancy() const { return occupancy_; }

  // Cells beyond the grid are exterior.
  bool occupied(int i, int j) const {
    return frame_.in_bounds(i, j) && occupancy_[frame_.index(i, j)] != 0;
  }
  std::size_t occupied_count() const { return occupied_count_; }

 private:
  GridFrame frame_;
  std::vector<std::uint8_t> occupancy_;
  std::size_t occupied_count_ = 0;
};

enum class Provenance { Euclidean, Geodesic };

// Per-cell distances on a raster's frame. Cells outside the domain hold NaN.
struct DistanceField {
  GridFrame frame;
  Provenance provenance = Provenance::Euclidean;
  std::vector<double> values;

  double at(int i, int j) const { return values[frame.index(i, j)]; }
  double at(Cell c) const { return at(c.i, c.j); }
};

// Maximum number of cells a rasterization may allocate.
inline constexpr std::size_t kMaxRasterCells = std::size_t{1} << 27;

// Cell-centre rasterization on a grid padded by at least 2h around the
// bounding box. Throws ResolutionError when nothing is occupied and
// ConnectivityError when the occupancy is not 4-connected.
RasterDomain rasterize(const DomainSpec& spec, double h);

bool is_4_connected(const RasterDomain& raster);

// Squared distance, in cell units, from every cell of a width x height grid
// to the nearest feature cell. Exact integer arithmetic (separable
// lower-envelope transform). At least one feature cell is required.
std::vector<std::int64_t> squared_feature_distance(int width, int height,
                                                   std::span<const std::uint8_t> feature,
                                                   bool parallel = true);

// Euclidean distance from each occupied cell centre to the nearest unoccupied
// cell centre, treating everything outside the grid as unoccupied.
DistanceField edt(const RasterDomain& raster);
DistanceField edt_serial(const RasterDomain& raster);

// Deepest cell of a Euclidean field. Plateaus (e.g. the spine of a stadium)
// resolve to the tied cell nearest the tie set's centroid.
Cell chebyshev_center(const DistanceField& field);

struct InradiusEstimate {
  double value = 0.0;
  double error = 0.0;  // 2 h sqrt(2)
  Cell center;
};

InradiusEstimate numeric_inradius(const RasterDomain& raster);
InradiusEstimate numeric_inradius(const DistanceField& euclidean_field);

double numeric_volume(const RasterDomain& raster);

// Centroid of the occupied cell centres.
Point2 occupancy_centroid(const RasterDomain& raster);

// Largest finite value of a field and its cell (lowest index on ties).
struct FieldMax {
  double value = 0.0;
  Cell cell;
};
FieldMax field_max(const DistanceField& field);

}  // namespace infspec
