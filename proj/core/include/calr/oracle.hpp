#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "calr/geometry.hpp"

namespace calr {

/// Trapezoidal Nystrom discretization of the block operator
///   [ -K*_i        -d/dnu_i S_e ]
///   [  d/dnu_e S_i   K*_e       ]
/// acting on (phi_i, phi_e) sampled at the panel nodes, weights folded in.
struct BlockNPMatrix {
  Eigen::MatrixXd matrix;
  int n_inner = 0;
  int n_outer = 0;
};

/// <x - y, nu(x)> / (2 pi |x - y|^2) for x on `target`, y on `source`.
double cross_kernel(const CurvePanel& target, const CurvePanel& source);

/// K* kernel on one curve; the diagonal is the limit kappa(x_i) / (4 pi).
double np_kernel(std::span<const CurvePanel> curve, std::size_t i, std::size_t j);

/// Single-curve K* with weights folded in.
Eigen::MatrixXd assemble_single_np(std::span<const CurvePanel> curve);

struct AssemblyOptions {
  bool flip_inner_block = false;  // negate the (1,1) block; mutation testing only
};

/// Throws CurveOverlap if two nodes on different curves are closer than 1e-8.
BlockNPMatrix assemble_block_np(std::span<const CurvePanel> gi, std::span<const CurvePanel> ge,
                                AssemblyOptions opts = {});

struct SpectrumReport {
  std::vector<double> numeric;     // sorted by |.| descending
  std::vector<double> matched;     // analytic partner of numeric[k]
  std::vector<double> rel_errors;  // |numeric - matched| / |matched|
  double max_rel_error = 0.0;
  double max_imag = 0.0;  // largest discarded imaginary part
};

/// The `count` largest-magnitude eigenvalues of m, matched greedily by magnitude against
/// `analytic` (each candidate used once, ties broken by sign agreement).
/// Throws EigensolveFailure if the solver fails or an imaginary part exceeds 1e-8.
SpectrumReport numeric_spectrum(const Eigen::MatrixXd& m, int count, std::span<const double> analytic);

/// {-1/2, 1/2} from n = 0 followed by +-lambda_{1,n}, +-lambda_{2,n} for n = 1..n_max.
std::vector<double> analytic_block_spectrum(const ConfocalGeometry& g, int n_max);

/// {1/2} followed by +-alpha_n for n = 1..n_max.
std::vector<double> analytic_single_spectrum(double rho0, int n_max);

}  // namespace calr
