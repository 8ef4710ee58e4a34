#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "calr/errors.hpp"
#include "calr/spectrum.hpp"
#include "frozen.hpp"

using namespace calr;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("single ellipse eigenvalues") {
  for (int n = 0; n <= 6; ++n) {
    CHECK(rel(single_ellipse_np(n, 0.5).alpha, frozen::alpha_half[n]) < 1e-15);
  }
  CHECK(rel(single_ellipse_np(1, 0.5).beta, frozen::beta1_half) < 1e-15);
  CHECK_THROWS_AS(single_ellipse_np(2000, 0.5), OverflowGuard);
  CHECK_THROWS_AS(single_ellipse_np(-1, 0.5), std::invalid_argument);
}

TEST_CASE("thin pair eigenvalues against frozen values") {
  const ConfocalGeometry g(1.0, 0.5, 0.8);
  for (const auto& row : frozen::thin_lambda) {
    const auto [l1, l2] = np_eigenvalues(row.n, g);
    CHECK(rel(l1, row.lambda1) < 1e-13);
    CHECK(rel(l2, row.lambda2) < 1e-13);
  }
  const auto [z1, z2] = np_eigenvalues(0, g);
  CHECK(z1 == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(z2 == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("thin pair eigenvectors and norms against frozen values") {
  const ConfocalGeometry g(1.0, 0.5, 0.8);
  for (const auto& row : frozen::thin_vec) {
    const ModeData m = mode_data(row.n, g);
    CHECK(rel(m.a1, row.a1) < 1e-12);
    CHECK(rel(m.a2, row.a2) < 1e-12);
    CHECK(rel(m.b, row.b) < 1e-12);
    CHECK(rel(m.norm_1p, row.norm_1p) < 1e-12);
    CHECK(rel(m.norm_1m, row.norm_1m) < 1e-12);
    CHECK(rel(m.norm_2p, row.norm_2p) < 1e-12);
    CHECK(rel(m.norm_2m, row.norm_2m) < 1e-12);
  }
}

TEST_CASE("thick pair against frozen values") {
  const ConfocalGeometry g(1.0, 0.2, 1.0);
  for (const auto& row : frozen::thick) {
    const ModeData m = mode_data(row.n, g);
    CHECK(rel(m.lambda1, row.lambda1) < 1e-12);
    CHECK(rel(m.lambda2, row.lambda2) < 1e-10);
    CHECK(rel(m.a2, row.a2) < 1e-10);
    CHECK(rel(m.norm_1p, row.norm_1p) < 1e-12);
    CHECK(rel(m.norm_1m, row.norm_1m) < 1e-10);
    CHECK(rel(m.norm_2p, row.norm_2p) < 1e-10);
    CHECK(rel(m.norm_2m, row.norm_2m) < 1e-12);
  }
}

TEST_CASE("block matrices carry the reported eigenpairs") {
  const ConfocalGeometry g(1.3, 0.4, 0.9);
  for (int n : {1, 2, 5, 12}) {
    const auto bm = block_matrices(n, g);
    const ModeData m = mode_data(n, g);
    const Eigen::Vector2d v1p(m.a1, m.b), v2p(m.a2, m.b), v1m(m.b, m.a2), v2m(m.b, m.a1);
    const double scale = std::abs(m.lambda1) * v1p.norm();
    CHECK((bm.A * v1p - m.lambda1 * v1p).norm() < 1e-14 * scale);
    CHECK((bm.A * v2p - m.lambda2 * v2p).norm() < 1e-14 * scale);
    CHECK((bm.B * v1m + m.lambda1 * v1m).norm() < 1e-14 * scale);
    CHECK((bm.B * v2m + m.lambda2 * v2m).norm() < 1e-14 * scale);
    CHECK(bm.A.trace() == doctest::Approx(m.lambda1 + m.lambda2).epsilon(1e-13));
    CHECK(bm.A.determinant() == doctest::Approx(m.lambda1 * m.lambda2).epsilon(1e-12));
  }
}

TEST_CASE("S-Gram matrix is positive definite and diagonalizes the modes") {
  const ConfocalGeometry g(1.0, 0.5, 0.8);
  for (int n : {1, 3, 10, 40}) {
    const ModeData m = mode_data(n, g);
    const Eigen::Matrix2d Gc = s_gram(n, g, Parity::Cos);
    const Eigen::Matrix2d Gs = s_gram(n, g, Parity::Sin);
    CHECK(Gc(0, 1) == doctest::Approx(Gc(1, 0)));
    CHECK(Gc.determinant() > 0.0);
    CHECK(Gc(0, 0) > 0.0);
    CHECK(Gs.determinant() > 0.0);
    CHECK(Gs(0, 0) > 0.0);
    const Eigen::Vector2d v1p(m.a1, m.b), v2p(m.a2, m.b), v1m(m.b, m.a2), v2m(m.b, m.a1);
    const double sc = std::sqrt(m.norm_1p * m.norm_2p);
    CHECK(std::abs(v1p.dot(Gc * v2p)) < 1e-12 * sc);
    CHECK(std::abs(v1m.dot(Gs * v2m)) < 1e-12 * std::sqrt(m.norm_1m * m.norm_2m));
    CHECK(rel(v1p.dot(Gc * v1p), m.norm_1p) < 1e-12);
    CHECK(rel(v2p.dot(Gc * v2p), m.norm_2p) < 1e-12);
    CHECK(rel(v1m.dot(Gs * v1m), m.norm_1m) < 1e-12);
    CHECK(rel(v2m.dot(Gs * v2m), m.norm_2m) < 1e-12);
  }
}

TEST_CASE("eigenvalues interlace inside (-1/2, 1/2) and decay") {
  const ConfocalGeometry g(1.0, 0.5, 0.8);
  double prev = 0.5;
  for (const auto& m : mode_table(60, g)) {
    CHECK(m.lambda1 < 0.0);
    CHECK(m.lambda2 > 0.0);
    CHECK(m.lambda2 < prev);
    prev = m.lambda2;
  }
}

TEST_CASE("mode_data refuses unrepresentable modes") {
  const ConfocalGeometry g(1.0, 0.5, 0.8);
  CHECK_THROWS_AS(mode_data(1500, g), OverflowGuard);
  CHECK_NOTHROW(mode_data(300, g));
}

TEST_CASE("critical radius") {
  const Regime thin = critical_radius(0.5, 0.8);
  CHECK(thin.kind == RegimeKind::Thin);
  CHECK(thin.rho_star == doctest::Approx(0.95));
  CHECK(thin.far_bound_rho == doctest::Approx(1.1));

  const Regime thick = critical_radius(0.2, 1.0);
  CHECK(thick.kind == RegimeKind::Thick);
  CHECK(thick.rho_star == doctest::Approx(1.6));
  CHECK(thick.far_bound_rho == doctest::Approx(2.2));

  // rho_e = 3 rho_i is on the boundary; both formulas agree there.
  const Regime edge = critical_radius(0.3, 0.9);
  CHECK(edge.rho_star == doctest::Approx(1.2));
  CHECK(critical_radius(0.3, 0.9 + 1e-9).rho_star == doctest::Approx(1.2).epsilon(1e-8));

  CHECK(to_string(RegimeKind::Thin) == "Thin");
  CHECK_THROWS(critical_radius(0.8, 0.5));
}

TEST_CASE("asymptotic rates") {
  const auto thin = asymptotic_rates(ConfocalGeometry(1.0, 0.5, 0.8));
  CHECK(thin.kind == RegimeKind::Thin);
  CHECK(thin.lambda1 == doctest::Approx(0.3));
  const auto thick = asymptotic_rates(ConfocalGeometry(1.0, 0.2, 1.0));
  CHECK(thick.lambda1 == doctest::Approx(0.4));
  CHECK(thick.lambda2 == doctest::Approx(1.2));

  // Measured decay between n = 40 and n = 60 matches.
  const ConfocalGeometry g(1.0, 0.2, 1.0);
  const auto m40 = mode_data(40, g);
  const auto m60 = mode_data(60, g);
  CHECK(std::log(std::abs(m40.lambda1 / m60.lambda1)) / 20.0 == doctest::Approx(thick.lambda1).epsilon(1e-3));
  CHECK(std::log(std::abs(m40.lambda2 / m60.lambda2)) / 20.0 == doctest::Approx(thick.lambda2).epsilon(1e-3));
}

}
