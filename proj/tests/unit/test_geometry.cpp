#include <doctest.h>

#include <cmath>
#include <numeric>

#include "calr/errors.hpp"
#include "calr/geometry.hpp"
#include "frozen.hpp"

using namespace calr;

TEST_SUITE("geometry") {

TEST_CASE("to_elliptic inverts to_cartesian") {
  for (double R : {0.5, 1.0, 2.0}) {
    for (double rho : {0.05, 0.5, 1.3, 4.0}) {
      for (double w : {0.0, 0.4, 1.5707963267948966, 2.9, 3.3, 5.9}) {
        const Vec2 x = to_cartesian(R, EllipticPoint::make(rho, w));
        const EllipticPoint p = to_elliptic(R, x);
        CHECK(p.rho == doctest::Approx(rho).epsilon(1e-12));
        const Vec2 y = to_cartesian(R, p);
        CHECK(std::hypot(y.x - x.x, y.y - x.y) < 1e-12 * (1.0 + std::hypot(x.x, x.y)));
      }
    }
  }
}

TEST_CASE("focal segment is degenerate") {
  CHECK_THROWS_AS(to_elliptic(1.0, {0.3, 0.0}), DegeneratePoint);
  CHECK_THROWS_AS(to_elliptic(1.0, {-1.0, 0.0}), DegeneratePoint);
  CHECK_NOTHROW(to_elliptic(1.0, {1.5, 0.0}));
  CHECK_NOTHROW(to_elliptic(1.0, {0.3, 1e-3}));
}

TEST_CASE("EllipticPoint validation") {
  CHECK_THROWS_AS(EllipticPoint::make(-0.1, 0.0), std::invalid_argument);
  CHECK(EllipticPoint::make(1.0, -0.5).omega == doctest::Approx(kTwoPi - 0.5));
  CHECK(normalize_angle(7.0) == doctest::Approx(7.0 - kTwoPi));
}

TEST_CASE("ConfocalGeometry rejects bad radii") {
  CHECK_THROWS(ConfocalGeometry(1.0, 0.8, 0.5));
  CHECK_THROWS(ConfocalGeometry(1.0, 0.0, 0.5));
  CHECK_THROWS(ConfocalGeometry(0.0, 0.3, 0.5));
  CHECK_NOTHROW(ConfocalGeometry(1.0, 0.5, 0.8));
}

TEST_CASE("metric factor") {
  CHECK(metric_factor(1.0, 0.5, kPi / 2) == doctest::Approx(frozen::metric_half_quarter).epsilon(1e-15));
  CHECK(metric_factor(1.0, 0.5, 0.0) == doctest::Approx(frozen::sinh_half).epsilon(1e-15));
  CHECK(metric_factor(2.0, 0.5, 0.0) == doctest::Approx(2.0 * frozen::sinh_half).epsilon(1e-15));
}

TEST_CASE("curvature at the vertices") {
  const double rho = 0.5;
  const double a = std::cosh(rho);
  const double b = std::sinh(rho);
  CHECK(ellipse_curvature(1.0, rho, 0.0) == doctest::Approx(a / (b * b)).epsilon(1e-14));
  CHECK(ellipse_curvature(1.0, rho, kPi / 2) == doctest::Approx(b / (a * a)).epsilon(1e-14));
  CHECK(ellipse_curvature(3.0, rho, 0.0) == doctest::Approx(a / (3.0 * b * b)).epsilon(1e-14));
}

TEST_CASE("normals are outward unit vectors") {
  for (double w : {0.0, 0.7, 2.0, 4.1}) {
    const Vec2 nu = ellipse_normal(1.0, 0.6, w);
    CHECK(norm2(nu) == doctest::Approx(1.0).epsilon(1e-14));
    const Vec2 x = to_cartesian(1.0, EllipticPoint::make(0.6, w));
    CHECK(dot(nu, x) > 0.0);
    // d x / d omega is tangent
    const Vec2 t{-std::sin(w) * std::cosh(0.6), std::cos(w) * std::sinh(0.6)};
    CHECK(std::abs(dot(nu, t)) < 1e-14);
  }
  CHECK(ellipse_normal(1.0, 0.6, 0.0).x == doctest::Approx(1.0));
}

TEST_CASE("sampled weights sum to the perimeter") {
  const auto c = sample_ellipse(1.0, 0.5, 128);
  REQUIRE(c.size() == 128);
  double L = 0.0;
  for (const auto& p : c) L += p.weight;
  CHECK(L == doctest::Approx(frozen::perimeter_half).epsilon(1e-14));
  CHECK_THROWS(sample_ellipse(1.0, 0.5, 2));
}

TEST_CASE("circle sampling") {
  const auto c = sample_circle(2.0, 64);
  double L = 0.0;
  for (const auto& p : c) {
    L += p.weight;
    CHECK(p.curvature == doctest::Approx(0.5));
    CHECK(dot(p.normal, p.node) == doctest::Approx(2.0));
  }
  CHECK(L == doctest::Approx(4.0 * kPi).epsilon(1e-14));
}

}
