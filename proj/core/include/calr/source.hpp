#pragma once

#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "calr/geometry.hpp"

namespace calr {

/// Point dipole f = a . grad(delta_{x0}); Newtonian potential a.(x - x0) / (2 pi |x - x0|^2).
struct Dipole {
  EllipticPoint location;
  Vec2 moment;
};

/// +charge at `plus`, -charge at `minus`; net charge zero.
struct ChargePair {
  EllipticPoint plus;
  EllipticPoint minus;
  double charge = 1.0;
};

/// A Newtonian potential given directly by its expansion coefficients.
struct CoefficientSource {
  double c = 0.0;
  std::vector<double> F_plus;   // F_plus[n-1]
  std::vector<double> F_minus;  // F_minus[n-1]
};

using SourceSpec = std::variant<Dipole, ChargePair, CoefficientSource>;

/// Truncated expansion F = c - sum_n (F+_n cos nw cosh n rho + F-_n sin nw sinh n rho).
struct SourceCoefficients {
  double c = 0.0;
  std::vector<double> F_plus;
  std::vector<double> F_minus;

  int n_max() const { return static_cast<int>(F_plus.size()); }
  double plus(int n) const { return F_plus[static_cast<std::size_t>(n - 1)]; }
  double minus(int n) const { return F_minus[static_cast<std::size_t>(n - 1)]; }
};

SourceCoefficients operator+(const SourceCoefficients& a, const SourceCoefficients& b);

/// Weights of cos nw cosh n rho and sin nw sinh n rho in (1/2pi) ln|x - x0|, rho < rho0.
struct GreenWeight {
  double cos_weight = 0.0;
  double sin_weight = 0.0;
};

/// Entry n-1 holds -e^{-n rho0} (cos n w0, sin n w0) / (n pi).
std::vector<GreenWeight> green_expansion_coefficients(EllipticPoint x0, int n_max);

/// Constant term (rho0 + ln(R/2)) / (2 pi) of the same expansion.
double green_constant(double R, EllipticPoint x0);

/// Smallest elliptic radius carrying source charge; nullopt for coefficient sources.
std::optional<double> source_radius(const SourceSpec& s);

/// Throws SourceInsideShell if a point source has rho0 <= rho_e.
SourceCoefficients newtonian_coefficients(const SourceSpec& s, const ConfocalGeometry& g, int n_max);

/// Closed-form Newtonian potential. Coefficient sources are summed as a series, valid only
/// inside their convergence radius. Throws SingularPoint at source locations.
double newtonian_eval(const SourceSpec& s, double R, Vec2 x);

/// Cartesian gradient of newtonian_eval.
Vec2 newtonian_gradient(const SourceSpec& s, double R, Vec2 x);

/// Independent route to the expansion coefficients: trapezoidal Fourier projection of
/// newtonian_eval on {rho = rho_t} with max(8 n_max, 512) nodes.
SourceCoefficients coefficient_projection_oracle(const SourceSpec& s, double R, double rho_t,
                                                 int n_max);

/// Least-squares decay rate of ln(|F+_n| + |F-_n|) over the nonzero entries.
/// Throws TooFewCoefficients with fewer than 10 nonzero entries.
double convergence_exponent(const SourceCoefficients& sc);

enum class GapVerdict { SatisfiedHeuristically, FailsHeuristically, Inconclusive };

std::string_view to_string(GapVerdict v);

/// Finite-n look at the gap condition. Term k is
///   e^{-(n_{k+1} - n_k)(rho_e - rho_i)} e^{2 n_k rho*} (|F+_{n_k}|^2 + |F-_{n_k}|^2),
/// stored also as its natural log since it overflows quickly.
struct GapConditionReport {
  std::vector<int> nonzero_indices;
  std::vector<double> gc_terms;
  std::vector<double> gc_log_terms;
  GapVerdict verdict = GapVerdict::Inconclusive;
};

/// Satisfied: last 5 terms strictly increasing with the final one above 1e3.
/// Fails: last 5 strictly decreasing with the final one below 1e-3.
/// Inconclusive otherwise, and always with fewer than 8 nonzero indices.
GapConditionReport gap_condition_report(const SourceCoefficients& sc, const ConfocalGeometry& g,
                                        double rho_star);

}  // namespace calr
