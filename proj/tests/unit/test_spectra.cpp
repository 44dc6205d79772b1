#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "infspec/errors.hpp"
#include "infspec/spectra.hpp"
#include "../oracles.hpp"

using namespace infspec;
using std::numbers::pi;

namespace {

// Volume-matched members, r = 1.
const double kHexApothem = 0.9523128068639574;

std::vector<Point2> occupied_centres(const RasterDomain& r) {
  std::vector<Point2> out;
  for (int j = 0; j < r.frame().height; ++j)
    for (int i = 0; i < r.frame().width; ++i)
      if (r.occupied(i, j)) out.push_back(r.frame().center(i, j));
  return out;
}

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("closed-form eigenpairs") {
  const auto ball = eigenpair_closed_form(DomainSpec::ball(1.0));
  CHECK(ball.lambda_D == 1.0);
  CHECK(ball.lambda_N == 1.0);
  const auto d = deltas(ball, 1.0);
  CHECK(d.delta1 == 0.0);
  CHECK(d.delta2 == 0.0);

  const auto st = eigenpair_closed_form(DomainSpec::stadium(0.2, pi * 0.96 / 0.4));
  CHECK(st.lambda_D == doctest::Approx(5.0));
  CHECK(st.lambda_N == doctest::Approx(0.2518948040834757).epsilon(1e-14));
  CHECK(st.lambda_N < 1.0 / 3.0);

  const auto ring = eigenpair_closed_form(DomainSpec::annulus(1.25, 0.75));
  CHECK(ring.lambda_D == doctest::Approx(4.0));

  const auto hex = deltas(eigenpair_closed_form(DomainSpec::polygon(6, kHexApothem)), 1.0);
  CHECK(hex.delta1 == doctest::Approx(0.05007513580866396).epsilon(1e-12));
  CHECK(hex.delta2 == doctest::Approx(0.09060825650730253).epsilon(1e-12));
}

TEST_CASE("volume-matched convex members have deltas of opposite sign") {
  // Ball optimality: lambda_D >= 1/r >= lambda_N among volume-r^n domains.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = 0.5 + 2.0 * u(rng);
    ShapeParams sp;
    DomainKind kind{};
    switch (trial % 4) {
      case 0: kind = DomainKind::Stadium; sp.ell = 3.0 * u(rng); break;
      case 1: kind = DomainKind::RegularPolygon; sp.sides = 3 + trial % 50; break;
      case 2: kind = DomainKind::Ellipse; sp.axis_ratios = {1.0 + 3.0 * u(rng), 1.0}; break;
      default: kind = DomainKind::Annulus; sp.eps = u(rng) * r;
    }
    const auto p = eigenpair_closed_form(normalize_to_ball_volume(kind, sp, r));
    CHECK(p.lambda_D >= 1.0 / r * (1.0 - 1e-12));
    CHECK(p.lambda_N <= 1.0 / r * (1.0 + 1e-12));
  }
}

TEST_CASE("numeric eigenpairs") {
  const double h = std::ldexp(1.0, -8);
  const auto ball = eigenpair_numeric(DomainSpec::ball(1.0), h, {GeodesicSolver::FastMarching, 64});
  CHECK(ball.lambda_D == doctest::Approx(1.0).epsilon(0.01));
  CHECK(ball.lambda_N == doctest::Approx(1.0).epsilon(0.02));
  CHECK(ball.h.has_value());

  const auto ring = eigenpair_numeric(DomainSpec::annulus(1.25, 0.75), h, {});
  CHECK(ring.lambda_D == doctest::Approx(4.0).epsilon(0.02));

  const auto st = eigenpair_numeric(DomainSpec::stadium(0.9686754890400234, 0.1), h, {});
  CHECK(st.lambda_D == doctest::Approx(1.0323374662767815).epsilon(0.01));
  CHECK(st.lambda_N == doctest::Approx(0.9816668907410124).epsilon(0.02));
}

TEST_CASE("sandwich radii") {
  const auto s = sandwich_radii(1.0, 0.1, 0.1);
  CHECK(s.inner == doctest::Approx(1.0 / 1.1));
  CHECK(s.outer_thm == doctest::Approx(1.1 / 0.9));
  CHECK(s.outer_lemma == doctest::Approx(1.0 / 0.9));
  const auto z = sandwich_radii(2.0, 0.0, 0.0);
  CHECK(z.inner == 2.0);
  CHECK(z.outer_thm == 2.0);
  CHECK_THROWS_AS(sandwich_radii(1.0, 0.1, 1.0), BoundVacuousError);
  CHECK_THROWS_AS(sandwich_radii(1.0, -0.1, 0.1), ParameterError);
}

TEST_CASE("outer lemma radius is half the diameter for every family member") {
  for (auto kind : {FamilyKind::Polygon, FamilyKind::Ellipse, FamilyKind::Stadium4})
    for (int k = 3; k <= 64; ++k) {
      const auto spec = family_member({kind}, k, 1.0);
      const auto d = deltas(eigenpair_closed_form(spec), 1.0);
      const auto s = sandwich_radii(1.0, d.delta1, d.delta2);
      CHECK(s.inner == doctest::Approx(closed_form_inradius(spec)).epsilon(1e-12));
      CHECK(s.outer_lemma == doctest::Approx(closed_form_diameter(spec) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("measure bound examples") {
  CHECK(symdiff_bound(2, 1.0, 0.1, 0.1) == doctest::Approx(pi * 0.21));
  CHECK(symdiff_bound(3, 1.0, 0.0, 0.1) == doctest::Approx(4.0 * pi / 3.0 * 0.2));
  CHECK(symdiff_bound(2, 2.0, 0.0, 0.0) == 0.0);
}

TEST_CASE("symmetric difference examples") {
  const double h = std::ldexp(1.0, -8);
  const auto ball = rasterize(DomainSpec::ball(1.0), h);
  CHECK(symmetric_difference(ball, {{0.0, 0.0}, 1.0}) == 0.0);
  const double far = symmetric_difference(ball, {{5.0, 0.0}, 1.0});
  CHECK(far == doctest::Approx(2.0 * pi).epsilon(4.0 * h));
  CHECK(symmetric_difference(ball, {{0.0, 0.0}, 0.5}) == doctest::Approx(0.75 * pi).epsilon(4.0 * h));
}

TEST_CASE("hexagon against the concentric unit disk") {
  const double want = 2.0 * oracle::polygon_minus_disk_area(6, kHexApothem, 1.0);
  CHECK(want == doctest::Approx(0.23394106816087604).epsilon(1e-9));
  const auto hex = rasterize(DomainSpec::polygon(6, kHexApothem), std::ldexp(1.0, -10));
  CHECK(std::abs(symmetric_difference(hex, {{0.0, 0.0}, 1.0}) - want) <= 0.005);
}

TEST_CASE("parallel symmetric difference equals the serial one") {
  const auto r = rasterize(DomainSpec::polygon(7, 1.0), std::ldexp(1.0, -7));
  for (const BallSpec b : {BallSpec{{0.0, 0.0}, 1.0}, BallSpec{{0.3, -0.2}, 0.8}, BallSpec{{4.0, 4.0}, 1.0}})
    CHECK(symmetric_difference(r, b) == symmetric_difference_serial(r, b));
}

TEST_CASE("Fraenkel asymmetry") {
  const double h = std::ldexp(1.0, -8);
  CHECK(fraenkel_asymmetry(rasterize(DomainSpec::ball(1.0, Point2{0.3, 0.1}), h), 1.0).value <= 0.01);
  const auto hex = fraenkel_asymmetry(rasterize(DomainSpec::polygon(6, kHexApothem), h), 1.0);
  CHECK(hex.value == doctest::Approx(0.23394106816087604 / pi).epsilon(0.07));
  CHECK(std::hypot(hex.center[0], hex.center[1]) <= 0.05);
  const auto st = fraenkel_asymmetry(rasterize(DomainSpec::stadium(0.2, pi * 0.96 / 0.4), h), 1.0);
  CHECK(st.value >= 0.3);
}

TEST_CASE("Hausdorff distance") {
  const double h = std::ldexp(1.0, -8);
  const auto ball = rasterize(DomainSpec::ball(1.0), h);
  CHECK(hausdorff_distance(ball, {{0.0, 0.0}, 1.0}) == 0.0);
  CHECK(std::abs(hausdorff_distance(ball, {{0.0, 0.0}, 1.25}) - 0.25) <= 2.0 * h);
  const auto hex_spec = DomainSpec::polygon(6, kHexApothem);
  const auto hex = rasterize(hex_spec, h);
  CHECK(closed_form_hausdorff(hex_spec, 1.0) == doctest::Approx(0.0996361107912678).epsilon(1e-12));
  CHECK(std::abs(hausdorff_distance(hex, {{0.0, 0.0}, 1.0}) - 0.0996361107912678) <= 2.0 * h);
}

TEST_CASE("Hausdorff distance equals brute force on small rasters") {
  const double h = std::ldexp(1.0, -4);
  for (const auto& spec : {DomainSpec::polygon(5, 0.9), DomainSpec::stadium(0.3, 1.5),
                           DomainSpec::annulus(1.25, 0.75)}) {
    const auto r = rasterize(spec, h);
    for (const BallSpec b : {BallSpec{{0.0, 0.0}, 1.0}, BallSpec{{0.2, 0.1}, 0.6}}) {
      std::vector<Point2> disk;
      for (int j = -40; j < 40; ++j)
        for (int i = -40; i < 40; ++i) {
          const Point2 c{r.frame().origin[0] + (i + 0.5) * h, r.frame().origin[1] + (j + 0.5) * h};
          if (std::hypot(c[0] - b.center[0], c[1] - b.center[1]) < b.radius) disk.push_back(c);
        }
      CHECK(hausdorff_distance(r, b) == doctest::Approx(oracle::brute_hausdorff(occupied_centres(r), disk)).epsilon(1e-12));
    }
  }
}

TEST_CASE("sandwich holds for convex members with even symmetry") {
  const double h = std::ldexp(1.0, -8);
  for (const auto& spec : {DomainSpec::ball(1.0), family_member({FamilyKind::Polygon}, 8, 1.0),
                           family_member({FamilyKind::Ellipse}, 5, 1.0),
                           family_member({FamilyKind::Stadium4}, 10, 1.0)}) {
    const auto s = verify_sandwich(spec, 1.0, h);
    CHECK(s.inner_pass);
    CHECK(s.outer_pass);
  }
  const auto ring = verify_sandwich(DomainSpec::annulus(1.25, 0.75), 1.0, h);
  CHECK(ring.radii.inner == doctest::Approx(0.25));
  CHECK(ring.inner_pass);
}

TEST_CASE("measured symmetric difference respects the inner measure bound") {
  const double h = std::ldexp(1.0, -7);
  ReportOptions opts;
  opts.fraenkel = false;
  for (auto kind : {FamilyKind::Polygon, FamilyKind::Ellipse})
    for (int k : {4, 6, 8, 12, 20}) {
      const auto spec = family_member({kind}, k, 1.0);
      const auto d = deltas(eigenpair_closed_form(spec), 1.0);
      if (d.delta1 >= 0.3 || d.delta2 >= 0.3) continue;
      const auto rep = stability_report(spec, 1.0, h, opts);
      CHECK(rep.symdiff_inner <= symdiff_bound(2, 1.0, d.delta1, d.delta2) + 5.0 * h);
      CHECK(rep.flags.symdiff_inner_bound);
    }
}

TEST_CASE("closed-form Hausdorff bounds the numeric one") {
  const double h = std::ldexp(1.0, -7);
  for (int k : {4, 6, 9, 16}) {
    const auto spec = family_member({FamilyKind::Polygon}, k, 1.0);
    const auto r = rasterize(spec, h);
    CHECK(std::abs(hausdorff_distance(r, {{0.0, 0.0}, 1.0}) - closed_form_hausdorff(spec, 1.0)) <= 2.0 * h);
  }
}

TEST_CASE("family sweeps in closed form") {
  std::vector<int> ks;
  for (int k = 3; k <= 64; ++k) ks.push_back(k);
  const auto poly = sweep({FamilyKind::Polygon}, 1.0, ks);
  CHECK(poly.summary.delta1_strictly_decreasing);
  CHECK(poly.summary.hausdorff_strictly_decreasing);
  CHECK(poly.summary.last_hausdorff < 0.002);
  // Odd polygons are narrower than their circumcircle, so delta2 alternates;
  // each parity class still decreases.
  for (std::size_t a = 2; a < poly.rows.size(); ++a)
    CHECK(poly.rows[a].closed.delta2 < poly.rows[a - 2].closed.delta2);

  const auto ell = sweep({FamilyKind::Ellipse}, 1.0, {1, 2, 4, 8, 16, 32, 64});
  CHECK(ell.summary.delta1_strictly_decreasing);
  CHECK(ell.summary.delta2_strictly_decreasing);
  CHECK(ell.rows.back().closed.delta1 < 0.01);

  const auto st = sweep({FamilyKind::Stadium4}, 1.0, {10, 20, 40, 80});
  CHECK(st.summary.delta1_strictly_decreasing);
  CHECK(st.summary.delta2_strictly_decreasing);
  const double d1[] = {0.03233746627678147, 0.016042137769459286, 0.00798940952323024, 0.003986789263440427};
  const double d2[] = {0.018333109258987568, 0.009127078271805256, 0.004553089767482366, 0.0022738598864149306};
  for (int a = 0; a < 4; ++a) {
    CHECK(st.rows[a].closed.delta1 == doctest::Approx(d1[a]).epsilon(1e-10));
    CHECK(st.rows[a].closed.delta2 == doctest::Approx(d2[a]).epsilon(1e-10));
  }
  CHECK_THROWS_AS(family_kind_from_string("spiral"), ParameterError);
}

}
