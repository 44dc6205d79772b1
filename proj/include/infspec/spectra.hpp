#pragma once

// Infinity-eigenvalues from geometry and the quantitative closeness-to-a-ball
// checks built on them.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infspec/domains.hpp"
#include "infspec/geodesic.hpp"
#include "infspec/raster.hpp"

namespace infspec {

enum class EigenMethod { ClosedForm, Numeric };

// lambda_D = 1 / inradius, lambda_N = 2 / intrinsic diameter.
struct EigenPair {
  double lambda_D = 0.0;
  double lambda_N = 0.0;
  EigenMethod method = EigenMethod::ClosedForm;
  std::optional<double> h;
  std::array<double, 2> error_bars{0.0, 0.0};  // absolute, on (lambda_D, lambda_N)
};

EigenPair eigenpair_closed_form(const DomainSpec& spec);
EigenPair eigenpair_numeric(const DomainSpec& spec, double h, const GeodesicConfig& cfg);
EigenPair eigenpair_numeric(const RasterDomain& raster, const GeodesicConfig& cfg);

struct Deltas {
  double delta1 = 0.0;  // |lambda_D - 1/r|
  double delta2 = 0.0;  // |lambda_N - 1/r|
};

Deltas deltas(const EigenPair& pair, double r);

struct SandwichRadii {
  double inner = 0.0;        // r / (delta1 r + 1)
  double outer_thm = 0.0;    // (r + delta2 r) / (1 - delta2 r)
  double outer_lemma = 0.0;  // r / (1 - delta2 r)
};

// Throws BoundVacuousError when delta2 r >= 1.
SandwichRadii sandwich_radii(double r, double delta1, double delta2);

// Returns C r^n with C = omega_n max{(delta1 r + 1)^n - 1, (n - 1) delta2}.
double symdiff_bound(int n, double r, double delta1, double delta2);
double symdiff_bound_constant(int n, double r, double delta1, double delta2);

struct BallSpec {
  Point2 center{0.0, 0.0};
  double radius = 1.0;
};

// h^2 times the number of lattice cells in exactly one of the raster and the
// ball rasterized on the same lattice (the lattice extends past the grid).
double symmetric_difference(const RasterDomain& raster, const BallSpec& ball);
double symmetric_difference_serial(const RasterDomain& raster, const BallSpec& ball);

struct FraenkelSearch {
  int coarse_points = 7;       // per axis, around the centroid
  double coarse_span = 0.5;    // half-width of the coarse grid, in units of r
  double min_step_cells = 0.25;
};

struct FraenkelResult {
  double value = 0.0;  // upper bound on the infimum over centres
  Point2 center{};
  int evaluations = 0;
};

FraenkelResult fraenkel_asymmetry(const RasterDomain& raster, double r,
                                  const FraenkelSearch& search = {});

// Hausdorff distance between the occupied cell centres and the lattice cell
// centres of the ball, via two feature distance transforms.
double hausdorff_distance(const RasterDomain& raster, const BallSpec& ball);

// Exact Hausdorff distance between a family member and the ball of radius r
// sharing its centre.
double closed_form_hausdorff(const DomainSpec& spec, double r);

struct CenterTrial {
  std::string label;  // "chebyshev", "centroid" or "diameter_midpoint"
  Point2 center{};
  double farthest = 0.0;  // max distance to an occupied cell centre
  bool pass = false;
};

struct SandwichCheck {
  Deltas deltas;
  SandwichRadii radii;
  double slack = 0.0;  // 2 h sqrt(2)
  Point2 inner_center{};
  double inradius = 0.0;  // numeric, at inner_center
  bool inner_pass = false;
  std::vector<CenterTrial> outer_trials;
  bool outer_pass = false;
  Point2 outer_center{};  // first passing trial, else the best one
};

// Tests both balls on the raster for the given deltas. The inner ball is
// centred at the Chebyshev centre; the outer ball tries the Chebyshev
// centre, the occupancy centroid and the midpoint of the farthest boundary
// pair.
SandwichCheck verify_sandwich(const RasterDomain& raster, double r, const Deltas& d);

// Closed-form deltas for a volume-matched spec, rasterized at h.
SandwichCheck verify_sandwich(const DomainSpec& spec, double r, double h);

struct StabilityFlags {
  bool inner_ball = false;
  bool outer_ball = false;
  bool symdiff_inner_bound = false;   // L(Omega sym B_inner) <= C r^n + 5h
  bool symdiff_outer_printed = false; // L(Omega sym B_outer) <= (n-1) omega_n delta2 r^n
  bool hausdorff_bound = false;       // d_H <= max(r - inner, outer - r) + 2h

  // Flags that decide the verify exit code. The printed outer measure bound
  // is reported but does not hold in general.
  bool theorem_pass() const { return inner_ball && outer_ball && symdiff_inner_bound; }
};

struct StabilityReport {
  double r = 0.0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double inner_radius = 0.0;
  double outer_radius_thm = 0.0;
  double outer_radius_lemma = 0.0;
  double symdiff_inner = 0.0;
  double symdiff_outer = 0.0;
  double fraenkel = 0.0;
  double hausdorff = 0.0;
  double bound_C = 0.0;
  StabilityFlags flags;
  std::optional<double> eigenfunction_deviation;

  // Supporting detail, serialized alongside the fixed fields.
  double h = 0.0;
  SandwichCheck sandwich;
  Point2 fraenkel_center{};
};

enum class DeltaSource { ClosedForm, Numeric };

struct ReportOptions {
  DeltaSource deltas = DeltaSource::ClosedForm;
  GeodesicConfig geodesic;
  bool fraenkel = true;
  FraenkelSearch fraenkel_search;
};

StabilityReport stability_report(const DomainSpec& spec, double r, double h,
                                 const ReportOptions& opts = {});

// Parametrized families indexed by k.
enum class FamilyKind {
  Polygon,   // regular k-gon
  Ellipse,   // axes (ratio(k), 1), scale-matched
  Stadium4,  // ell = 1/k, eps from the volume constraint
};

struct Family {
  FamilyKind kind = FamilyKind::Polygon;
  std::function<double(int)> ellipse_ratio = [](int k) { return 1.0 + 1.0 / k; };
};

DomainSpec family_member(const Family& family, int k, double r);

struct SweepOptions {
  std::optional<double> h;  // numeric columns only when set
  bool numeric_deltas = true;
  GeodesicConfig geodesic;
  bool fraenkel = false;
  bool eigenfunction = false;  // sup deviation, certified families only
};

struct SweepRow {
  int index = 0;
  DomainSpec spec = DomainSpec::ball(1.0);
  Deltas closed;
  double hausdorff_closed = 0.0;
  std::optional<Deltas> numeric;
  std::optional<double> hausdorff_numeric;
  std::optional<double> fraenkel;
  std::optional<double> sup_deviation;
};

struct SweepSummary {
  bool delta1_strictly_decreasing = false;
  bool delta2_strictly_decreasing = false;
  bool hausdorff_strictly_decreasing = false;
  std::optional<bool> sup_deviation_nonincreasing;
  double last_hausdorff = 0.0;
};

struct SweepResult {
  Family family;
  double r = 0.0;
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

SweepResult sweep(const Family& family, double r, const std::vector<int>& indices,
                  const SweepOptions& opts = {});

std::string_view to_string(FamilyKind kind);
FamilyKind family_kind_from_string(std::string_view name);

}  // namespace infspec
