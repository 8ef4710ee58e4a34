#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "calr/geometry.hpp"
#include "calr/source.hpp"
#include "calr/spectrum.hpp"

namespace calr {

using cplx = std::complex<double>;

/// Core and exterior permittivity 1, shell permittivity -1 + i delta.
struct ShellConfig {
  ConfocalGeometry geometry;
  double delta;
  int n_max;

  ShellConfig(ConfocalGeometry g, double delta, int n_max);
};

/// z_delta = i delta / (2 (2 - i delta)).
cplx z_param(double delta);

/// |mu + z_delta| in the closed form sqrt((mu - delta^2/(2(4+delta^2)))^2 + delta^2/(4+delta^2)^2).
double resolvent_magnitude(double mu, double delta);

/// Coefficients of g = (dF/d nu_i, -dF/d nu_e) in the basis phi_n = Xi^-1 (cos n w, sin n w).
struct ModeForcing {
  int n = 0;
  double inner_cos = 0.0;  // -n F+_n sinh(n rho_i)
  double inner_sin = 0.0;  // -n F-_n cosh(n rho_i)
  double outer_cos = 0.0;  //  n F+_n sinh(n rho_e)
  double outer_sin = 0.0;  //  n F-_n cosh(n rho_e)
};

std::vector<ModeForcing> boundary_forcing(const SourceCoefficients& sc, const ConfocalGeometry& g);

/// <g, Psi>_S for the four eigenfunctions of mode n.
struct ModeProjectionEntry {
  int n = 0;
  double p1p = 0.0;
  double p1m = 0.0;
  double p2p = 0.0;
  double p2m = 0.0;
};

using ModeProjection = std::vector<ModeProjectionEntry>;

/// Throws std::invalid_argument if `modes` does not cover every forced n.
ModeProjection mode_projections(const std::vector<ModeForcing>& forcing,
                                const std::vector<ModeData>& modes, const ConfocalGeometry& g);

struct DensityMode {
  int n = 0;
  cplx p_cos;  // on phi^ci_n
  cplx q_cos;  // on phi^ce_n
  cplx p_sin;  // on phi^si_n
  cplx q_sin;  // on phi^se_n
};

struct DensityCoefficients {
  std::vector<DensityMode> modes;
  /// Estimated size of the neglected modes relative to the retained ones, measured on the
  /// potential they produce at the outer interface.
  double tail_estimate = 0.0;
  bool truncation_warning = false;
};

/// Spectral solution from precomputed projections and modes.
DensityCoefficients solve_densities(const ModeProjection& proj, const std::vector<ModeData>& modes,
                                    double delta);

/// Everything needed to evaluate the field of one (source, delta) pair.
struct Solution {
  SourceSpec source;
  ShellConfig config;
  SourceCoefficients coefficients;
  std::vector<ModeData> modes;
  ModeProjection projections;
  DensityCoefficients densities;
};

/// Full pipeline: coefficients, forcing, projections, densities, truncation check.
Solution solve(const SourceSpec& s, const ShellConfig& config);

/// Same pipeline but for explicit coefficients; `source` is kept only for F evaluation.
Solution solve(const SourceSpec& s, const SourceCoefficients& sc, const ShellConfig& config);

/// V = F + S_i[phi_i] + S_e[phi_e]. Throws SingularPoint at point-source locations.
cplx eval_potential(const Solution& sol, EllipticPoint x);

/// (dV/d rho, dV/d omega) at any point off the interfaces. On an interface the
/// branch with rho <= rho_k (the inner side) is used.
std::array<cplx, 2> eval_gradient(const Solution& sol, double rho, double omega);

/// eval_gradient restricted to rho_i < rho < rho_e.
std::array<cplx, 2> eval_gradient_shell(const Solution& sol, double rho, double omega);

struct QuadratureResolution {
  int rho_panels = 4;
  int rho_points = 32;
  int omega_nodes = 0;  // 0: max(4 n_max, 512)
};

/// delta * integral over the shell of |V_rho|^2 + |V_omega|^2 in (rho, omega).
double dissipated_power_direct(const Solution& sol, QuadratureResolution quad = {});

/// delta * sum over modes of <g,Psi>^2 / (<Psi,Psi> (lambda^2 + delta^2)).
double dissipated_power_spectral(const ModeProjection& proj, const std::vector<ModeData>& modes,
                                 double delta);

/// Per-n contribution to dissipated_power_spectral.
std::vector<double> spectral_energy_terms(const ModeProjection& proj, const std::vector<ModeData>& modes,
                                          double delta);

/// Index n with the largest spectral energy term.
int dominant_mode(const Solution& sol);

/// ceil(2 ln(1/delta)/(rho_e - rho_i)) + 40, raised if needed so that the source tail
/// e^{-n (rho0 - rho_e)} drops below 1e-16, and capped so that 2 n rho_e < 600.
/// Throws OverflowGuard if the resonance part alone exceeds the cap.
int adaptive_n_max(double delta, const ConfocalGeometry& g, std::optional<double> source_rho);

/// Largest n with 2 n rho_e < 600.
int n_max_cap(const ConfocalGeometry& g);

struct SweepOptions {
  int n_max = 0;  // 0: adaptive per delta
  QuadratureResolution quad{};
  int threads = 1;
};

struct SweepRecord {
  double delta = 0.0;
  int n_max = 0;
  double E_direct = 0.0;
  double E_spectral = 0.0;
  std::vector<double> probe_rho;
  std::vector<double> far_samples;     // |V| at each probe
  std::vector<double> normalized_far;  // |V| / sqrt(E_direct)
  bool truncation_warning = false;
};

SweepRecord sweep_point(const SourceSpec& s, const ConfocalGeometry& g, double delta,
                        const std::vector<EllipticPoint>& probes, const SweepOptions& opts = {});

/// deltas must be descending and probes strictly outside the shell. `on_record`, if set,
/// sees each record in delta order as soon as it and all earlier ones are done.
std::vector<SweepRecord> sweep(const SourceSpec& s, const ConfocalGeometry& g,
                               const std::vector<double>& deltas,
                               const std::vector<EllipticPoint>& probes, const SweepOptions& opts = {},
                               const std::function<void(const SweepRecord&)>& on_record = {});

enum class Verdict { CALR, NoCALR, Indeterminate };

std::string_view to_string(Verdict v);

struct Diagnosis {
  Verdict verdict = Verdict::Indeterminate;
  double growth_exponent = 0.0;  // least-squares d ln E / d ln(1/delta)
  double total_growth = 0.0;     // E(smallest delta) / E(largest delta)
  double energy_spread = 0.0;    // max E / min E
  bool energy_increasing = false;
  bool far_field_vanishing = false;  // normalized field decreasing at every probe beyond the far bound
  int far_probes = 0;
  std::string note;
};

/// CALR: E strictly increasing, growth exponent >= 0.1, and the normalized field
/// decreasing at every probe with rho > far_bound_rho.
/// NoCALR: E never exceeds twice its value at the largest delta and the exponent is <= 0.
/// Indeterminate otherwise, and whenever the sweep has < 4 points or spans < 4 decades.
Diagnosis calr_classify(const std::vector<SweepRecord>& records, const Regime& regime);

}  // namespace calr
