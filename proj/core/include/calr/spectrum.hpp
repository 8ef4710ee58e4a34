#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "calr/geometry.hpp"

namespace calr {

enum class Parity { Cos, Sin };

/// Eigen-data of the NP operator on a single ellipse {rho = rho0}:
/// K*[Xi^-1 cos nw] = alpha Xi^-1 cos nw, K*[Xi^-1 sin nw] = -alpha Xi^-1 sin nw.
/// beta is the exterior coefficient of the single layer of the normal derivative of
/// the harmonic polynomial cos(nw)(e^{n rho} + e^{-n rho}).
struct SingleEllipseMode {
  int n = 0;
  double alpha = 0.0;
  double beta = 0.0;
};

SingleEllipseMode single_ellipse_np(int n, double rho0);

/// Action of the two-interface NP-type operator on span{phi^ci_n, phi^ce_n} (A)
/// and span{phi^si_n, phi^se_n} (B), expressed in that basis.
struct BlockMatrices {
  Eigen::Matrix2d A;
  Eigen::Matrix2d B;
};

BlockMatrices block_matrices(int n, const ConfocalGeometry& g);

/// (lambda_{1,n}, lambda_{2,n}); valid for n >= 0. At n = 0 these are -1/2 and 1/2.
std::pair<double, double> np_eigenvalues(int n, const ConfocalGeometry& g);

/// Closed-form spectral record of mode n >= 1.
///
/// A has eigenvalues lambda1 < 0 < lambda2 with (unnormalized) eigenvectors
/// (a1, b) and (a2, b); B has -lambda1, -lambda2 with (b, a2) and (b, a1).
/// norm_kp / norm_km are the S-norms <Psi, Psi>_S of the cos / sin eigenfunctions.
struct ModeData {
  int n = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;
  double norm_1p = 0.0;
  double norm_1m = 0.0;
  double norm_2p = 0.0;
  double norm_2m = 0.0;
};

/// Throws OverflowGuard when a reported quantity is not a normal finite double.
ModeData mode_data(int n, const ConfocalGeometry& g);

/// mode_data for n = 1..n_max.
std::vector<ModeData> mode_table(int n_max, const ConfocalGeometry& g);

/// Gram matrix of -<., S .> on span{phi^ci_n, phi^ce_n} (Cos) or span{phi^si_n, phi^se_n} (Sin).
Eigen::Matrix2d s_gram(int n, const ConfocalGeometry& g, Parity parity);

enum class RegimeKind { Thin, Thick };

std::string_view to_string(RegimeKind kind);

/// Critical elliptic radius and the far-field boundedness threshold.
/// Thin shells (rho_e <= 3 rho_i): rho* = (3 rho_e - rho_i)/2, bound 2 rho_e - rho_i.
/// Thick shells: rho* = 2 (rho_e - rho_i), bound 3 rho_e - 4 rho_i.
struct Regime {
  RegimeKind kind = RegimeKind::Thin;
  double rho_star = 0.0;
  double far_bound_rho = 0.0;
};

Regime critical_radius(double rho_i, double rho_e);

/// Predicted exponential decay rates r in |q_n| ~ e^{-r n} (eigenvalues, eigenvector
/// entries) and q_n ~ n^{-1} e^{-r n} (S-norms) as n -> infinity.
struct AsymptoticRates {
  RegimeKind kind = RegimeKind::Thin;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double b = 0.0;
  double norm_1p = 0.0;
  double norm_1m = 0.0;
  double norm_2p = 0.0;
  double norm_2m = 0.0;
};

AsymptoticRates asymptotic_rates(const ConfocalGeometry& g);

}  // namespace calr
