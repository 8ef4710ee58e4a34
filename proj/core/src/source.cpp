#include "calr/source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "calr/errors.hpp"

namespace calr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kSingularTolerance = 1e-13;

void check_outside(EllipticPoint p, const ConfocalGeometry& g, const char* what) {
  if (!(p.rho > g.rho_e())) {
    throw SourceInsideShell(std::string(what) + " at rho=" + std::to_string(p.rho) +
                            " is not outside the shell boundary rho_e=" +
                            std::to_string(g.rho_e()));
  }
}

Vec2 checked_offset(double R, Vec2 x, EllipticPoint at) {
  const Vec2 d = x - to_cartesian(R, at);
  if (std::sqrt(norm2(d)) <= kSingularTolerance * R) {
    throw SingularPoint("newtonian_eval: evaluation at a source location");
  }
  return d;
}

// Monopole coefficients F+_n, F-_n of G(x - x0) (i.e. minus the Green weights).
void add_monopole(SourceCoefficients& out, EllipticPoint x0, double scale, double R) {
  const auto w = green_expansion_coefficients(x0, out.n_max());
  for (std::size_t k = 0; k < w.size(); ++k) {
    out.F_plus[k] -= scale * w[k].cos_weight;
    out.F_minus[k] -= scale * w[k].sin_weight;
  }
  out.c += scale * green_constant(R, x0);
}

// Series evaluation of a coefficient source at elliptic point p.
double coefficient_series(const CoefficientSource& cs, EllipticPoint p) {
  double v = cs.c;
  const std::size_t n_max = std::min(cs.F_plus.size(), cs.F_minus.size());
  for (std::size_t k = 0; k < n_max; ++k) {
    const double n = static_cast<double>(k + 1);
    v -= cs.F_plus[k] * std::cos(n * p.omega) * std::cosh(n * p.rho) +
         cs.F_minus[k] * std::sin(n * p.omega) * std::sinh(n * p.rho);
  }
  return v;
}

}  // namespace

SourceCoefficients operator+(const SourceCoefficients& a, const SourceCoefficients& b) {
  if (a.n_max() != b.n_max()) throw std::invalid_argument("SourceCoefficients: n_max mismatch");
  SourceCoefficients s = a;
  s.c += b.c;
  for (std::size_t k = 0; k < s.F_plus.size(); ++k) {
    s.F_plus[k] += b.F_plus[k];
    s.F_minus[k] += b.F_minus[k];
  }
  return s;
}

std::vector<GreenWeight> green_expansion_coefficients(EllipticPoint x0, int n_max) {
  if (!(x0.rho > 0.0) || n_max < 1) {
    throw std::invalid_argument("green_expansion_coefficients: need rho0 > 0, n_max >= 1");
  }
  std::vector<GreenWeight> w(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const double amp = -std::exp(-n * x0.rho) / (n * kPi);
    w[static_cast<std::size_t>(n - 1)] = {amp * std::cos(n * x0.omega), amp * std::sin(n * x0.omega)};
  }
  return w;
}

double green_constant(double R, EllipticPoint x0) { return (x0.rho + std::log(0.5 * R)) / kTwoPi; }

std::optional<double> source_radius(const SourceSpec& s) {
  return std::visit(overloaded{
                        [](const Dipole& d) -> std::optional<double> { return d.location.rho; },
                        [](const ChargePair& p) -> std::optional<double> {
                          return std::min(p.plus.rho, p.minus.rho);
                        },
                        [](const CoefficientSource&) -> std::optional<double> { return std::nullopt; },
                    },
                    s);
}

SourceCoefficients newtonian_coefficients(const SourceSpec& s, const ConfocalGeometry& g, int n_max) {
  if (n_max < 0) throw std::invalid_argument("newtonian_coefficients: n_max must be >= 0");
  SourceCoefficients out;
  out.F_plus.assign(static_cast<std::size_t>(n_max), 0.0);
  out.F_minus.assign(static_cast<std::size_t>(n_max), 0.0);
  const double R = g.R();
  std::visit(
      overloaded{
          [&](const Dipole& d) {
            check_outside(d.location, g, "dipole");
            const double r0 = d.location.rho;
            const double w0 = d.location.omega;
            // F = -a . grad_{x0} G(x - x0); the gradient in x0's elliptic frame is
            // Xi0^-2 (d/d rho0 dx/d rho0 + d/d w0 dx/d w0) since the map is conformal.
            const Vec2 x_rho{R * std::cos(w0) * std::sinh(r0), R * std::sin(w0) * std::cosh(r0)};
            const Vec2 x_omega{-R * std::sin(w0) * std::cosh(r0), R * std::cos(w0) * std::sinh(r0)};
            const double a_rho = dot(d.moment, x_rho);
            const double a_omega = dot(d.moment, x_omega);
            const double xi0 = metric_factor(R, r0, w0);
            const double scale = 1.0 / (kPi * xi0 * xi0);
            for (int n = 1; n <= n_max; ++n) {
              const double e = std::exp(-n * r0) * scale;
              const double cn = std::cos(n * w0);
              const double sn = std::sin(n * w0);
              out.F_plus[static_cast<std::size_t>(n - 1)] = e * (a_rho * cn + a_omega * sn);
              out.F_minus[static_cast<std::size_t>(n - 1)] = e * (a_rho * sn - a_omega * cn);
            }
            out.c = -a_rho * scale / 2.0;
          },
          [&](const ChargePair& p) {
            check_outside(p.plus, g, "positive charge");
            check_outside(p.minus, g, "negative charge");
            if (n_max == 0) {
              out.c = p.charge * (green_constant(R, p.plus) - green_constant(R, p.minus));
              return;
            }
            add_monopole(out, p.plus, p.charge, R);
            add_monopole(out, p.minus, -p.charge, R);
          },
          [&](const CoefficientSource& cs) {
            out.c = cs.c;
            for (std::size_t k = 0; k < static_cast<std::size_t>(n_max); ++k) {
              if (k < cs.F_plus.size()) out.F_plus[k] = cs.F_plus[k];
              if (k < cs.F_minus.size()) out.F_minus[k] = cs.F_minus[k];
            }
          },
      },
      s);
  return out;
}

double newtonian_eval(const SourceSpec& s, double R, Vec2 x) {
  return std::visit(overloaded{
                        [&](const Dipole& d) {
                          const Vec2 r = checked_offset(R, x, d.location);
                          return dot(d.moment, r) / (kTwoPi * norm2(r));
                        },
                        [&](const ChargePair& p) {
                          const Vec2 rp = checked_offset(R, x, p.plus);
                          const Vec2 rm = checked_offset(R, x, p.minus);
                          return p.charge / (2.0 * kTwoPi) * std::log(norm2(rp) / norm2(rm));
                        },
                        [&](const CoefficientSource& cs) {
                          return coefficient_series(cs, to_elliptic(R, x));
                        },
                    },
                    s);
}

Vec2 newtonian_gradient(const SourceSpec& s, double R, Vec2 x) {
  return std::visit(
      overloaded{
          [&](const Dipole& d) {
            const Vec2 r = checked_offset(R, x, d.location);
            const double r2 = norm2(r);
            return (1.0 / (kTwoPi * r2 * r2)) * (r2 * d.moment - (2.0 * dot(d.moment, r)) * r);
          },
          [&](const ChargePair& p) {
            const Vec2 rp = checked_offset(R, x, p.plus);
            const Vec2 rm = checked_offset(R, x, p.minus);
            return (p.charge / kTwoPi) * ((1.0 / norm2(rp)) * rp - (1.0 / norm2(rm)) * rm);
          },
          [&](const CoefficientSource& cs) {
            // Chain rule through the conformal map: grad = Xi^-2 (V_rho x_rho + V_omega x_omega).
            const EllipticPoint p = to_elliptic(R, x);
            double v_rho = 0.0;
            double v_omega = 0.0;
            const std::size_t n_max = std::min(cs.F_plus.size(), cs.F_minus.size());
            for (std::size_t k = 0; k < n_max; ++k) {
              const double n = static_cast<double>(k + 1);
              const double c = std::cos(n * p.omega);
              const double sn = std::sin(n * p.omega);
              v_rho -= n * (cs.F_plus[k] * c * std::sinh(n * p.rho) + cs.F_minus[k] * sn * std::cosh(n * p.rho));
              v_omega -= n * (-cs.F_plus[k] * sn * std::cosh(n * p.rho) + cs.F_minus[k] * c * std::sinh(n * p.rho));
            }
            const Vec2 x_rho{R * std::cos(p.omega) * std::sinh(p.rho), R * std::sin(p.omega) * std::cosh(p.rho)};
            const Vec2 x_omega{-R * std::sin(p.omega) * std::cosh(p.rho), R * std::cos(p.omega) * std::sinh(p.rho)};
            const double xi = metric_factor(R, p.rho, p.omega);
            return (1.0 / (xi * xi)) * (v_rho * x_rho + v_omega * x_omega);
          },
      },
      s);
}

SourceCoefficients coefficient_projection_oracle(const SourceSpec& s, double R, double rho_t, int n_max) {
  if (n_max < 1 || !(rho_t > 0.0)) {
    throw std::invalid_argument("coefficient_projection_oracle: need n_max >= 1, rho_t > 0");
  }
  if (const auto r0 = source_radius(s); r0 && !(rho_t < *r0)) {
    throw std::invalid_argument("coefficient_projection_oracle: rho_t must be inside the source radius");
  }
  const int M = std::max(8 * n_max, 512);
  std::vector<double> samples(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double w = kTwoPi * j / M;
    samples[static_cast<std::size_t>(j)] = newtonian_eval(s, R, to_cartesian(R, {rho_t, w}));
  }
  SourceCoefficients out;
  out.F_plus.resize(static_cast<std::size_t>(n_max));
  out.F_minus.resize(static_cast<std::size_t>(n_max));
  double mean = 0.0;
  for (double v : samples) mean += v;
  out.c = mean / M;
  for (int n = 1; n <= n_max; ++n) {
    double pc = 0.0;
    double ps = 0.0;
    for (int j = 0; j < M; ++j) {
      // Reduce n j mod M so the angle stays exact.
      const double w = kTwoPi * static_cast<double>((static_cast<long long>(n) * j) % M) / M;
      pc += samples[static_cast<std::size_t>(j)] * std::cos(w);
      ps += samples[static_cast<std::size_t>(j)] * std::sin(w);
    }
    pc *= 2.0 / M;
    ps *= 2.0 / M;
    out.F_plus[static_cast<std::size_t>(n - 1)] = -pc / std::cosh(n * rho_t);
    out.F_minus[static_cast<std::size_t>(n - 1)] = -ps / std::sinh(n * rho_t);
  }
  return out;
}

double convergence_exponent(const SourceCoefficients& sc) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (int n = 1; n <= sc.n_max(); ++n) {
    const double m = std::abs(sc.plus(n)) + std::abs(sc.minus(n));
    if (m > std::numeric_limits<double>::min() && std::isfinite(m)) {
      xs.push_back(n);
      ys.push_back(std::log(m));
    }
  }
  if (xs.size() < 10) {
    throw TooFewCoefficients("convergence_exponent: " + std::to_string(xs.size()) +
                             " nonzero coefficients, need at least 10");
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return -sxy / sxx;
}

std::string_view to_string(GapVerdict v) {
  switch (v) {
    case GapVerdict::SatisfiedHeuristically:
      return "SatisfiedHeuristically";
    case GapVerdict::FailsHeuristically:
      return "FailsHeuristically";
    case GapVerdict::Inconclusive:
      break;
  }
  return "Inconclusive";
}

GapConditionReport gap_condition_report(const SourceCoefficients& sc, const ConfocalGeometry& g,
                                        double rho_star) {
  GapConditionReport rep;
  for (int n = 1; n <= sc.n_max(); ++n) {
    if (sc.plus(n) != 0.0 || sc.minus(n) != 0.0) rep.nonzero_indices.push_back(n);
  }
  const double gap = g.rho_e() - g.rho_i();
  for (std::size_t k = 0; k + 1 < rep.nonzero_indices.size(); ++k) {
    const int n = rep.nonzero_indices[k];
    const int next = rep.nonzero_indices[k + 1];
    const double mag = std::hypot(sc.plus(n), sc.minus(n));
    const double lt = -(next - n) * gap + 2.0 * n * rho_star + 2.0 * std::log(mag);
    rep.gc_log_terms.push_back(lt);
    rep.gc_terms.push_back(std::exp(lt));
  }
  if (rep.nonzero_indices.size() < 8 || rep.gc_log_terms.size() < 5) return rep;

  const auto& lt = rep.gc_log_terms;
  const std::size_t first = lt.size() - 5;
  bool increasing = true;
  bool decreasing = true;
  for (std::size_t k = first + 1; k < lt.size(); ++k) {
    increasing = increasing && lt[k] > lt[k - 1];
    decreasing = decreasing && lt[k] < lt[k - 1];
  }
  if (increasing && lt.back() > std::log(1e3)) {
    rep.verdict = GapVerdict::SatisfiedHeuristically;
  } else if (decreasing && lt.back() < std::log(1e-3)) {
    rep.verdict = GapVerdict::FailsHeuristically;
  }
  return rep;
}

}  // namespace calr
