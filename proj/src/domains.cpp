#include "infspec/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "infspec/errors.hpp"

namespace infspec {

namespace {

using std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

void validate(const DomainSpec::Params& params) {
  std::visit(
      Overloaded{
          [](const Ball& b) {
            if (!positive_finite(b.radius))
              throw ParameterError("ball radius must be positive");
            if (b.center.size() < 2)
              throw ParameterError("ball dimension must be at least 2");
            for (double c : b.center)
              if (!std::isfinite(c)) throw ParameterError("ball center must be finite");
          },
          [](const Annulus& a) {
            if (!positive_finite(a.outer_radius) || !positive_finite(a.inner_radius))
              throw ParameterError("annulus radii must be positive");
            if (!(a.inner_radius < a.outer_radius))
              throw ParameterError("annulus inner radius must be below outer radius");
          },
          [](const Stadium& s) {
            if (!positive_finite(s.eps))
              throw ParameterError("stadium cap radius must be positive");
            if (!std::isfinite(s.ell) || s.ell < 0.0)
              throw ParameterError("stadium segment length must be non-negative");
          },
          [](const RegularPolygon& p) {
            if (p.sides < 3) throw ParameterError("polygon needs at least 3 sides");
            if (!positive_finite(p.apothem))
              throw ParameterError("polygon apothem must be positive");
          },
          [](const Ellipse& e) {
            if (e.axes.size() < 2)
              throw ParameterError("ellipse dimension must be at least 2");
            for (double a : e.axes)
              if (!positive_finite(a))
                throw ParameterError("ellipse semi-axes must be positive");
          },
      },
      params);
}

double square(double v) { return v * v; }

// Distance from x to the segment [-half, half] x {0}.
double distance_to_axis_segment(const Point2& x, double half) {
  const double dx = std::max(std::abs(x[0]) - half, 0.0);
  return std::hypot(dx, x[1]);
}

}  // namespace

std::string_view to_string(DomainKind kind) {
  switch (kind) {
    case DomainKind::Ball: return "ball";
    case DomainKind::Annulus: return "annulus";
    case DomainKind::Stadium: return "stadium";
    case DomainKind::RegularPolygon: return "regular_polygon";
    case DomainKind::Ellipse: return "ellipse";
  }
  return "unknown";
}

DomainKind domain_kind_from_string(std::string_view name) {
  if (name == "ball") return DomainKind::Ball;
  if (name == "annulus") return DomainKind::Annulus;
  if (name == "stadium") return DomainKind::Stadium;
  if (name == "regular_polygon" || name == "polygon") return DomainKind::RegularPolygon;
  if (name == "ellipse") return DomainKind::Ellipse;
  throw ParameterError("unknown domain kind '" + std::string(name) + "'");
}

DomainSpec::DomainSpec(Params params) : params_(std::move(params)) { validate(params_); }

DomainSpec DomainSpec::ball(double radius, int dimension) {
  if (dimension < 2) throw ParameterError("ball dimension must be at least 2");
  return DomainSpec(Ball{radius, std::vector<double>(static_cast<std::size_t>(dimension), 0.0)});
}

DomainSpec DomainSpec::ball(double radius, Point2 center) {
  return DomainSpec(Ball{radius, {center[0], center[1]}});
}

DomainSpec DomainSpec::annulus(double outer_radius, double inner_radius) {
  return DomainSpec(Annulus{outer_radius, inner_radius});
}

DomainSpec DomainSpec::stadium(double eps, double ell) { return DomainSpec(Stadium{eps, ell}); }

DomainSpec DomainSpec::polygon(int sides, double apothem) {
  return DomainSpec(RegularPolygon{sides, apothem});
}

DomainSpec DomainSpec::ellipse(std::vector<double> axes) {
  return DomainSpec(Ellipse{std::move(axes)});
}

DomainKind DomainSpec::kind() const { return static_cast<DomainKind>(params_.index()); }

int DomainSpec::dimension() const {
  return std::visit(Overloaded{
                        [](const Ball& b) { return static_cast<int>(b.center.size()); },
                        [](const Ellipse& e) { return static_cast<int>(e.axes.size()); },
                        [](const auto&) { return 2; },
                    },
                    params_);
}

Point2 DomainSpec::center2() const {
  if (const auto* b = std::get_if<Ball>(&params_)) return {b->center[0], b->center[1]};
  return {0.0, 0.0};
}

Box2 DomainSpec::bounding_box() const {
  if (dimension() != 2) throw ParameterError("bounding box is defined for planar domains only");
  return std::visit(
      Overloaded{
          [](const Ball& b) {
            return Box2{{b.center[0] - b.radius, b.center[1] - b.radius},
                        {b.center[0] + b.radius, b.center[1] + b.radius}};
          },
          [](const Annulus& a) {
            return Box2{{-a.outer_radius, -a.outer_radius}, {a.outer_radius, a.outer_radius}};
          },
          [](const Stadium& s) {
            const double half = 0.5 * s.ell + s.eps;
            return Box2{{-half, -s.eps}, {half, s.eps}};
          },
          [](const RegularPolygon& p) {
            const double rc = polygon_circumradius(p);
            return Box2{{-rc, -rc}, {rc, rc}};
          },
          [](const Ellipse& e) {
            return Box2{{-e.axes[0], -e.axes[1]}, {e.axes[0], e.axes[1]}};
          },
      },
      params_);
}

double unit_ball_volume(int n) {
  if (n < 1) throw ParameterError("dimension must be positive");
  const double half = 0.5 * n;
  return std::pow(pi, half) / std::tgamma(half + 1.0);
}

double polygon_circumradius(const RegularPolygon& p) {
  return p.apothem / std::cos(pi / p.sides);
}

double volume(const DomainSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Ball& b) {
            const int n = static_cast<int>(b.center.size());
            return unit_ball_volume(n) * std::pow(b.radius, n);
          },
          [](const Annulus& a) {
            return pi * (square(a.outer_radius) - square(a.inner_radius));
          },
          [](const Stadium& s) { return 2.0 * s.eps * s.ell + pi * square(s.eps); },
          [](const RegularPolygon& p) {
            return p.sides * square(p.apothem) * std::tan(pi / p.sides);
          },
          [](const Ellipse& e) {
            const double prod =
                std::accumulate(e.axes.begin(), e.axes.end(), 1.0, std::multiplies<>());
            return unit_ball_volume(static_cast<int>(e.axes.size())) * prod;
          },
      },
      spec.params());
}

DomainSpec normalize_to_ball_volume(DomainKind kind, const ShapeParams& shape, double r) {
  if (!positive_finite(r)) throw ParameterError("reference radius must be positive");
  switch (kind) {
    case DomainKind::Ball:
      return DomainSpec::ball(r, shape.axis_ratios.empty()
                                     ? shape.dimension
                                     : static_cast<int>(shape.axis_ratios.size()));

    case DomainKind::Stadium: {
      const double target = pi * r * r;
      if (shape.ell && !shape.eps) {
        const double ell = *shape.ell;
        if (!std::isfinite(ell) || ell < 0.0)
          throw ParameterError("stadium segment length must be non-negative");
        // pi eps^2 + 2 ell eps - pi r^2 = 0, positive root; written to avoid
        // cancellation when ell dominates.
        const double disc = std::sqrt(ell * ell + pi * target);
        const double eps = target / (ell + disc);
        return DomainSpec::stadium(eps, ell);
      }
      if (shape.eps && !shape.ell) {
        const double eps = *shape.eps;
        if (!positive_finite(eps)) throw ParameterError("stadium cap radius must be positive");
        if (eps > r)
          throw InfeasibleError("stadium cap radius exceeds the reference radius; no ell >= 0");
        return DomainSpec::stadium(eps, pi * (r * r - eps * eps) / (2.0 * eps));
      }
      throw ParameterError("stadium normalization needs exactly one of eps, ell");
    }

    case DomainKind::Annulus: {
      if (!shape.eps) throw ParameterError("annulus normalization needs the inner radius");
      const double inner = *shape.eps;
      if (!positive_finite(inner)) throw ParameterError("annulus inner radius must be positive");
      return DomainSpec::annulus(std::sqrt(r * r + inner * inner), inner);
    }

    case DomainKind::RegularPolygon: {
      const int k = shape.sides;
      if (k < 3) throw ParameterError("polygon needs at least 3 sides");
      const double apothem = r * std::sqrt(pi / (k * std::tan(pi / k)));
      return DomainSpec::polygon(k, apothem);
    }

    case DomainKind::Ellipse: {
      const auto& ratios = shape.axis_ratios;
      if (ratios.size() < 2) throw ParameterError("ellipse normalization needs axis ratios");
      for (double q : ratios)
        if (!positive_finite(q)) throw ParameterError("axis ratios must be positive");
      const double n = static_cast<double>(ratios.size());
      // Geometric mean via logs keeps large n from overflowing the product.
      double log_sum = 0.0;
      for (double q : ratios) log_sum += std::log(q);
      const double scale = r / std::exp(log_sum / n);
      std::vector<double> axes;
      axes.reserve(ratios.size());
      for (double q : ratios) axes.push_back(scale * q);
      return DomainSpec::ellipse(std::move(axes));
    }
  }
  throw ParameterError("unsupported domain kind");
}

bool contains(const DomainSpec& spec, std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.dimension())
    throw ParameterError("point dimension does not match the domain");
  return std::visit(
      Overloaded{
          [&](const Ball& b) {
            double d2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) d2 += square(x[i] - b.center[i]);
            return d2 < b.radius * b.radius;
          },
          [&](const Annulus& a) {
            const double d2 = square(x[0]) + square(x[1]);
            return d2 > square(a.inner_radius) && d2 < square(a.outer_radius);
          },
          [&](const Stadium& s) {
            return distance_to_axis_segment({x[0], x[1]}, 0.5 * s.ell) < s.eps;
          },
          [&](const RegularPolygon& p) {
            for (int j = 0; j < p.sides; ++j) {
              const double theta = 2.0 * pi * j / p.sides;
              if (x[0] * std::cos(theta) + x[1] * std::sin(theta) >= p.apothem) return false;
            }
            return true;
          },
          [&](const Ellipse& e) {
            double q = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) q += square(x[i] / e.axes[i]);
            return q < 1.0;
          },
      },
      spec.params());
}

bool contains(const DomainSpec& spec, const Point2& x) {
  return contains(spec, std::span<const double>(x.data(), x.size()));
}

double closed_form_inradius(const DomainSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Ball& b) { return b.radius; },
          [](const Annulus& a) { return 0.5 * (a.outer_radius - a.inner_radius); },
          [](const Stadium& s) { return s.eps; },
          [](const RegularPolygon& p) { return p.apothem; },
          [](const Ellipse& e) { return *std::min_element(e.axes.begin(), e.axes.end()); },
      },
      spec.params());
}

double closed_form_diameter(const DomainSpec& spec) {
  return std::visit(
      Overloaded{
          [](const Ball& b) { return 2.0 * b.radius; },
          [](const Annulus& a) {
            // Antipodal outer points joined by two tangent segments and the
            // arc of the hole between the tangency points.
            const double big = a.outer_radius;
            const double small = a.inner_radius;
            const double tangent = std::sqrt(big * big - small * small);
            const double arc = small * (pi - 2.0 * std::acos(small / big));
            return 2.0 * tangent + arc;
          },
          [](const Stadium& s) { return s.ell + 2.0 * s.eps; },
          [](const RegularPolygon& p) {
            const double rc = polygon_circumradius(p);
            if (p.sides % 2 == 0) return 2.0 * rc;
            return 2.0 * rc * std::cos(pi / (2.0 * p.sides));
          },
          [](const Ellipse& e) { return 2.0 * *std::max_element(e.axes.begin(), e.axes.end()); },
      },
      spec.params());
}

}  // namespace infspec
