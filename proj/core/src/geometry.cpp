#include "calr/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "calr/errors.hpp"

namespace calr {

namespace {
constexpr double kFocalTolerance = 1e-13;
}  // namespace

double normalize_angle(double omega) {
  double w = std::fmod(omega, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  // fmod of a tiny negative value can round back up to 2 pi.
  if (w >= kTwoPi) w = 0.0;
  return w;
}

EllipticPoint EllipticPoint::make(double rho, double omega) {
  if (!(rho >= 0.0) || !std::isfinite(rho) || !std::isfinite(omega)) {
    throw std::invalid_argument("EllipticPoint: rho must be finite and >= 0");
  }
  return {rho, normalize_angle(omega)};
}

ConfocalGeometry::ConfocalGeometry(double R, double rho_i, double rho_e)
    : R_(R), rho_i_(rho_i), rho_e_(rho_e) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw std::invalid_argument("ConfocalGeometry: R must be positive");
  }
  if (!(rho_i > 0.0) || !(rho_e > rho_i) || !std::isfinite(rho_e)) {
    throw std::invalid_argument("ConfocalGeometry: need 0 < rho_i < rho_e, got rho_i=" +
                                std::to_string(rho_i) + ", rho_e=" + std::to_string(rho_e));
  }
}

Vec2 to_cartesian(double R, EllipticPoint p) {
  return {R * std::cos(p.omega) * std::cosh(p.rho), R * std::sin(p.omega) * std::sinh(p.rho)};
}

EllipticPoint to_elliptic(double R, Vec2 x) {
  if (std::abs(x.y) <= kFocalTolerance * R && std::abs(x.x) <= R * (1.0 + kFocalTolerance)) {
    throw DegeneratePoint("to_elliptic: point lies on the focal segment");
  }
  const double u = (x.x / R) * (x.x / R);
  const double v = (x.y / R) * (x.y / R);
  // sinh^2 rho solves S^2 + (1 - u - v) S - v = 0; pick the cancellation-free root form.
  const double t = u + v - 1.0;
  const double disc = std::sqrt(t * t + 4.0 * v);
  const double s2 = t >= 0.0 ? 0.5 * (t + disc) : 2.0 * v / (disc - t);
  const double rho = std::asinh(std::sqrt(s2));
  const double c = x.x / (R * std::cosh(rho));
  const double s = rho > 0.0 ? x.y / (R * std::sinh(rho)) : 0.0;
  return {rho, normalize_angle(std::atan2(s, c))};
}

double metric_factor(double R, double rho, double omega) {
  const double sh = std::sinh(rho);
  const double sn = std::sin(omega);
  return R * std::sqrt(sh * sh + sn * sn);
}

double ellipse_curvature(double R, double rho0, double omega) {
  const double xi = metric_factor(R, rho0, omega);
  return R * R * std::cosh(rho0) * std::sinh(rho0) / (xi * xi * xi);
}

Vec2 ellipse_normal(double R, double rho0, double omega) {
  const double xi = metric_factor(R, rho0, omega);
  return {R * std::cos(omega) * std::sinh(rho0) / xi, R * std::sin(omega) * std::cosh(rho0) / xi};
}

std::vector<CurvePanel> sample_ellipse(double R, double rho0, int N) {
  if (N < 8 || N % 2 != 0) throw std::invalid_argument("sample_ellipse: N must be even and >= 8");
  if (!(rho0 > 0.0)) throw std::invalid_argument("sample_ellipse: rho0 must be positive");
  std::vector<CurvePanel> panels;
  panels.reserve(static_cast<std::size_t>(N));
  const double h = kTwoPi / N;
  for (int j = 0; j < N; ++j) {
    const double w = h * j;
    panels.push_back({to_cartesian(R, {rho0, w}), ellipse_normal(R, rho0, w),
                      ellipse_curvature(R, rho0, w), metric_factor(R, rho0, w) * h});
  }
  return panels;
}

std::vector<CurvePanel> sample_circle(double radius, int N) {
  if (N < 8 || N % 2 != 0) throw std::invalid_argument("sample_circle: N must be even and >= 8");
  std::vector<CurvePanel> panels;
  panels.reserve(static_cast<std::size_t>(N));
  const double h = kTwoPi / N;
  for (int j = 0; j < N; ++j) {
    const double w = h * j;
    const Vec2 n{std::cos(w), std::sin(w)};
    panels.push_back({radius * n, n, 1.0 / radius, radius * h});
  }
  return panels;
}

}  // namespace calr
