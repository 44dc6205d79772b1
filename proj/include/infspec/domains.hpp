#pragma once

// Analytic domain families: membership, closed-form volume, inradius and
// intrinsic diameter, and rescaling to a prescribed ball volume.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace infspec {

using Point2 = std::array<double, 2>;

enum class DomainKind { Ball, Annulus, Stadium, RegularPolygon, Ellipse };

std::string_view to_string(DomainKind kind);
DomainKind domain_kind_from_string(std::string_view name);

// Family parameters. Annulus, Stadium and RegularPolygon are planar and
// centred at the origin; the stadium's straight segment runs along x and the
// polygon has an edge normal along +x.
struct Ball {
  double radius = 1.0;
  std::vector<double> center{0.0, 0.0};
};

struct Annulus {
  double outer_radius = 0.0;
  double inner_radius = 0.0;
};

struct Stadium {
  double eps = 0.0;  // cap radius, half the width
  double ell = 0.0;  // length of the straight segment
};

struct RegularPolygon {
  int sides = 0;
  double apothem = 0.0;
};

struct Ellipse {
  std::vector<double> axes;  // semi-axes, one per dimension
};

struct Box2 {
  Point2 lo;
  Point2 hi;
};

class DomainSpec {
 public:
  using Params = std::variant<Ball, Annulus, Stadium, RegularPolygon, Ellipse>;

  // Throws ParameterError when the parameters violate the family invariants.
  explicit DomainSpec(Params params);

  static DomainSpec ball(double radius, int dimension = 2);
  static DomainSpec ball(double radius, Point2 center);
  static DomainSpec annulus(double outer_radius, double inner_radius);
  static DomainSpec stadium(double eps, double ell);
  static DomainSpec polygon(int sides, double apothem);
  static DomainSpec ellipse(std::vector<double> axes);

  DomainKind kind() const;
  int dimension() const;
  const Params& params() const { return params_; }

  template <class T>
  const T& as() const {
    return std::get<T>(params_);
  }

  bool is_convex() const { return kind() != DomainKind::Annulus; }

  // Natural centre of the family (origin, or the ball centre).
  Point2 center2() const;

  // Tight axis-aligned box of the closure; planar specs only.
  Box2 bounding_box() const;

 private:
  Params params_;
};

// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

double volume(const DomainSpec& spec);

// Shape degrees of freedom handed to normalize_to_ball_volume. Exactly one
// scale is left free and solved from the volume constraint:
//   Stadium:        ell given -> eps solved, or eps given -> ell solved
//   Annulus:        inner radius (eps) given -> outer radius solved
//   RegularPolygon: sides given -> apothem solved
//   Ellipse:        axis ratios given -> common scale solved
//   Ball:           nothing (dimension taken from axis_ratios.size() if set)
struct ShapeParams {
  std::optional<double> eps;
  std::optional<double> ell;
  int sides = 0;
  std::vector<double> axis_ratios;
  int dimension = 2;
};

DomainSpec normalize_to_ball_volume(DomainKind kind, const ShapeParams& shape,
                                    double r);

// Open-set membership: points on the boundary are outside.
bool contains(const DomainSpec& spec, std::span<const double> x);
bool contains(const DomainSpec& spec, const Point2& x);

double closed_form_inradius(const DomainSpec& spec);

// Intrinsic (geodesic) diameter. For convex families this is the Euclidean
// diameter; a regular polygon with an odd number of sides has diameter equal
// to its longest diagonal, not twice its circumradius.
double closed_form_diameter(const DomainSpec& spec);

double polygon_circumradius(const RegularPolygon& p);

}  // namespace infspec
