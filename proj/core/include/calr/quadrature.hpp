#pragma once

#include <vector>

namespace calr {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// Composite Gauss-Legendre: `panels` equal panels of `points` nodes on [a, b].
QuadratureRule composite_gauss_legendre(double a, double b, int panels, int points);

/// M-point periodic trapezoidal rule on [0, 2 pi).
QuadratureRule periodic_trapezoid(int M);

}  // namespace calr
