#pragma once

#include <vector>

namespace calr {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm2(Vec2 a) { return dot(a, a); }

/// Wraps an angle into [0, 2*pi).
double normalize_angle(double omega);

/// Elliptic coordinates (rho, omega) relative to foci (+-R, 0).
struct EllipticPoint {
  double rho = 0.0;
  double omega = 0.0;

  /// Validates rho >= 0 and normalizes omega; throws std::invalid_argument.
  static EllipticPoint make(double rho, double omega);
};

/// Core boundary {rho = rho_i} and shell boundary {rho = rho_e} sharing foci (+-R, 0).
class ConfocalGeometry {
 public:
  ConfocalGeometry(double R, double rho_i, double rho_e);

  double R() const { return R_; }
  double rho_i() const { return rho_i_; }
  double rho_e() const { return rho_e_; }

 private:
  double R_;
  double rho_i_;
  double rho_e_;
};

/// One Nystrom node on a closed curve.
struct CurvePanel {
  Vec2 node;
  Vec2 normal;       // outward unit normal
  double curvature;  // positive for convex curves
  double weight;     // arclength quadrature weight
};

/// (R cos w cosh rho, R sin w sinh rho).
Vec2 to_cartesian(double R, EllipticPoint p);

/// Inverse of to_cartesian. Throws DegeneratePoint on the focal segment.
EllipticPoint to_elliptic(double R, Vec2 x);

/// Length element Xi = R sqrt(sinh^2 rho + sin^2 omega); d(sigma) = Xi d(omega).
double metric_factor(double R, double rho, double omega);

/// Curvature of the confocal ellipse {rho = rho0} at angle omega.
double ellipse_curvature(double R, double rho0, double omega);

/// Outward unit normal of {rho = rho0} at angle omega (the direction of d x / d rho).
Vec2 ellipse_normal(double R, double rho0, double omega);

/// N panels equispaced in omega on {rho = rho0}; weight_j = Xi(rho0, omega_j) 2 pi / N.
std::vector<CurvePanel> sample_ellipse(double R, double rho0, int N);

/// N panels on the circle of the given radius centred at the origin.
std::vector<CurvePanel> sample_circle(double radius, int N);

}  // namespace calr
