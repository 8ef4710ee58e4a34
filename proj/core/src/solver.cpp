#include "calr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "calr/errors.hpp"
#include "calr/quadrature.hpp"

namespace calr {

namespace {

// Single-layer factors of mode n on the curve rho = rho_k, evaluated at rho.
struct LayerFactors {
  double v_cos;  // S_k[phi^ck_n] / cos(n w)
  double v_sin;  // S_k[phi^sk_n] / sin(n w)
  double d_cos;  // d/d rho of v_cos
  double d_sin;
};

LayerFactors layer_factors(int n, double rho, double rho_k) {
  const bool inside = rho <= rho_k;
  const double hi = inside ? rho_k : rho;
  const double lo = inside ? rho : rho_k;
  const double e1 = std::exp(-n * (hi - lo));
  const double e2 = std::exp(-n * (hi + lo));
  const double ch = 0.5 * (e1 + e2);
  const double sh = 0.5 * (e1 - e2);
  LayerFactors f;
  f.v_cos = -ch / n;
  f.v_sin = -sh / n;
  if (inside) {
    f.d_cos = -sh;
    f.d_sin = -ch;
  } else {
    f.d_cos = ch;
    f.d_sin = sh;
  }
  return f;
}

// Fourier coefficients in omega of V and V_rho on one ellipse, excluding any
// closed-form source term.
struct RadialRow {
  std::vector<cplx> vc, vs, dc, ds;
};

void radial_row(const Solution& sol, double rho, RadialRow& row) {
  const auto& g = sol.config.geometry;
  const auto& modes = sol.densities.modes;
  const std::size_t N = modes.size();
  row.vc.assign(N, {});
  row.vs.assign(N, {});
  row.dc.assign(N, {});
  row.ds.assign(N, {});
  for (std::size_t k = 0; k < N; ++k) {
    const DensityMode& m = modes[k];
    const LayerFactors fi = layer_factors(m.n, rho, g.rho_i());
    const LayerFactors fe = layer_factors(m.n, rho, g.rho_e());
    row.vc[k] = m.p_cos * fi.v_cos + m.q_cos * fe.v_cos;
    row.vs[k] = m.p_sin * fi.v_sin + m.q_sin * fe.v_sin;
    row.dc[k] = m.p_cos * fi.d_cos + m.q_cos * fe.d_cos;
    row.ds[k] = m.p_sin * fi.d_sin + m.q_sin * fe.d_sin;
  }
  if (!std::holds_alternative<CoefficientSource>(sol.source)) return;
  const auto& sc = sol.coefficients;
  for (std::size_t k = 0; k < N && static_cast<int>(k) < sc.n_max(); ++k) {
    const int n = static_cast<int>(k + 1);
    const double ch = std::cosh(n * rho);
    const double sh = std::sinh(n * rho);
    row.vc[k] -= sc.plus(n) * ch;
    row.vs[k] -= sc.minus(n) * sh;
    row.dc[k] -= n * sc.plus(n) * sh;
    row.ds[k] -= n * sc.minus(n) * ch;
  }
}

struct FieldSample {
  cplx v;
  cplx v_rho;
  cplx v_omega;
};

FieldSample sum_row(const RadialRow& row, double omega) {
  FieldSample s{};
  const cplx step = std::polar(1.0, omega);
  cplx e = step;
  for (std::size_t k = 0; k < row.vc.size(); ++k) {
    const double c = e.real();
    const double sn = e.imag();
    const double n = static_cast<double>(k + 1);
    s.v += row.vc[k] * c + row.vs[k] * sn;
    s.v_rho += row.dc[k] * c + row.ds[k] * sn;
    s.v_omega += n * (row.vs[k] * c - row.vc[k] * sn);
    e *= step;
    // Resynchronize the recurrence now and then to keep phase error at rounding level.
    if ((k & 63u) == 63u) e = std::polar(1.0, (n + 1.0) * omega);
  }
  return s;
}

// Closed-form source contribution (value, d/d rho, d/d omega) for point sources.
FieldSample point_source_field(const Solution& sol, double rho, double omega) {
  const double R = sol.config.geometry.R();
  const Vec2 x = to_cartesian(R, {rho, omega});
  const double v = newtonian_eval(sol.source, R, x);
  const Vec2 grad = newtonian_gradient(sol.source, R, x);
  const Vec2 x_rho{R * std::cos(omega) * std::sinh(rho), R * std::sin(omega) * std::cosh(rho)};
  const Vec2 x_omega{-R * std::sin(omega) * std::cosh(rho), R * std::cos(omega) * std::sinh(rho)};
  return {v, dot(grad, x_rho), dot(grad, x_omega)};
}

FieldSample field_at(const Solution& sol, double rho, double omega) {
  RadialRow row;
  radial_row(sol, rho, row);
  FieldSample s = sum_row(row, omega);
  if (std::holds_alternative<CoefficientSource>(sol.source)) {
    s.v += sol.coefficients.c;
  } else {
    const FieldSample f = point_source_field(sol, rho, omega);
    s.v += f.v;
    s.v_rho += f.v_rho;
    s.v_omega += f.v_omega;
  }
  return s;
}

// Potential magnitude of mode n at the outer interface.
double outer_weight(const DensityMode& m, const ConfocalGeometry& g) {
  const LayerFactors fi = layer_factors(m.n, g.rho_e(), g.rho_i());
  const LayerFactors fe = layer_factors(m.n, g.rho_e(), g.rho_e());
  return std::abs(m.p_cos) * std::abs(fi.v_cos) + std::abs(m.q_cos) * std::abs(fe.v_cos) +
         std::abs(m.p_sin) * std::abs(fi.v_sin) + std::abs(m.q_sin) * std::abs(fe.v_sin);
}

void estimate_tail(DensityCoefficients& dc, const ConfocalGeometry& g, std::optional<double> decay_rho) {
  if (dc.modes.empty()) return;
  double total = 0.0;
  std::vector<double> w;
  w.reserve(dc.modes.size());
  for (const auto& m : dc.modes) {
    w.push_back(outer_weight(m, g));
    total += w.back();
  }
  if (!(total > 0.0)) return;
  double r = std::numeric_limits<double>::quiet_NaN();
  if (decay_rho) r = std::exp(-(*decay_rho - g.rho_e()));
  if (!(r < 1.0)) {
    // Fall back to the observed ratio of the last two nonzero weights.
    int last = -1;
    int prev = -1;
    for (int k = static_cast<int>(w.size()) - 1; k >= 0 && prev < 0; --k) {
      if (w[static_cast<std::size_t>(k)] > 0.0) (last < 0 ? last : prev) = k;
    }
    if (prev >= 0) {
      r = std::pow(w[static_cast<std::size_t>(last)] / w[static_cast<std::size_t>(prev)],
                   1.0 / (last - prev));
    }
  }
  if (!(r < 1.0)) {
    dc.tail_estimate = std::numeric_limits<double>::infinity();
  } else {
    dc.tail_estimate = w.back() * r / (1.0 - r) / total;
  }
  dc.truncation_warning = dc.tail_estimate > 1e-10;
}

std::optional<double> decay_radius(const SourceSpec& s, const SourceCoefficients& sc) {
  if (auto r = source_radius(s)) return r;
  try {
    return convergence_exponent(sc);
  } catch (const TooFewCoefficients&) {
    return std::nullopt;
  }
}

}  // namespace

ShellConfig::ShellConfig(ConfocalGeometry g, double d, int n) : geometry(g), delta(d), n_max(n) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("ShellConfig: delta must be > 0");
  if (n_max < 1) throw std::invalid_argument("ShellConfig: n_max must be >= 1");
}

cplx z_param(double delta) { return cplx(0.0, delta) / (2.0 * cplx(2.0, -delta)); }

double resolvent_magnitude(double mu, double delta) {
  const double d2 = delta * delta;
  const double re = mu - d2 / (2.0 * (4.0 + d2));
  const double im = delta / (4.0 + d2);
  return std::hypot(re, im);
}

std::vector<ModeForcing> boundary_forcing(const SourceCoefficients& sc, const ConfocalGeometry& g) {
  std::vector<ModeForcing> f;
  f.reserve(static_cast<std::size_t>(sc.n_max()));
  for (int n = 1; n <= sc.n_max(); ++n) {
    const double fp = sc.plus(n);
    const double fm = sc.minus(n);
    ModeForcing m;
    m.n = n;
    if (fp != 0.0) {
      m.inner_cos = -n * fp * std::sinh(n * g.rho_i());
      m.outer_cos = n * fp * std::sinh(n * g.rho_e());
    }
    if (fm != 0.0) {
      m.inner_sin = -n * fm * std::cosh(n * g.rho_i());
      m.outer_sin = n * fm * std::cosh(n * g.rho_e());
    }
    f.push_back(m);
  }
  return f;
}

ModeProjection mode_projections(const std::vector<ModeForcing>& forcing, const std::vector<ModeData>& modes,
                                const ConfocalGeometry& g) {
  ModeProjection proj;
  proj.reserve(forcing.size());
  for (const auto& f : forcing) {
    ModeProjectionEntry e;
    e.n = f.n;
    const bool forced = f.inner_cos != 0.0 || f.outer_cos != 0.0 || f.inner_sin != 0.0 || f.outer_sin != 0.0;
    if (forced) {
      if (f.n < 1 || static_cast<std::size_t>(f.n) > modes.size() || modes[static_cast<std::size_t>(f.n - 1)].n != f.n) {
        throw std::invalid_argument("mode_projections: no mode data for n=" + std::to_string(f.n));
      }
      const ModeData& m = modes[static_cast<std::size_t>(f.n - 1)];
      const Eigen::Vector2d gc(f.inner_cos, f.outer_cos);
      const Eigen::Vector2d gs(f.inner_sin, f.outer_sin);
      const Eigen::Vector2d wc = s_gram(f.n, g, Parity::Cos) * gc;
      const Eigen::Vector2d ws = s_gram(f.n, g, Parity::Sin) * gs;
      e.p1p = wc.dot(Eigen::Vector2d(m.a1, m.b));
      e.p2p = wc.dot(Eigen::Vector2d(m.a2, m.b));
      e.p1m = ws.dot(Eigen::Vector2d(m.b, m.a2));
      e.p2m = ws.dot(Eigen::Vector2d(m.b, m.a1));
    }
    proj.push_back(e);
  }
  return proj;
}

DensityCoefficients solve_densities(const ModeProjection& proj, const std::vector<ModeData>& modes, double delta) {
  const cplx z = z_param(delta);
  DensityCoefficients dc;
  dc.modes.reserve(proj.size());
  for (const auto& e : proj) {
    DensityMode d;
    d.n = e.n;
    if (e.p1p != 0.0 || e.p2p != 0.0 || e.p1m != 0.0 || e.p2m != 0.0) {
      const ModeData& m = modes.at(static_cast<std::size_t>(e.n - 1));
      const cplx c1p = e.p1p / ((m.lambda1 + z) * m.norm_1p);
      const cplx c2p = e.p2p / ((m.lambda2 + z) * m.norm_2p);
      const cplx c1m = e.p1m / ((-m.lambda1 + z) * m.norm_1m);
      const cplx c2m = e.p2m / ((-m.lambda2 + z) * m.norm_2m);
      d.p_cos = c1p * m.a1 + c2p * m.a2;
      d.q_cos = (c1p + c2p) * m.b;
      d.p_sin = (c1m + c2m) * m.b;
      d.q_sin = c1m * m.a2 + c2m * m.a1;
    }
    dc.modes.push_back(d);
  }
  return dc;
}

Solution solve(const SourceSpec& s, const ShellConfig& config) {
  return solve(s, newtonian_coefficients(s, config.geometry, config.n_max), config);
}

Solution solve(const SourceSpec& s, const SourceCoefficients& sc, const ShellConfig& config) {
  Solution sol{s, config, sc, {}, {}, {}};
  if (sol.coefficients.n_max() > config.n_max) {
    sol.coefficients.F_plus.resize(static_cast<std::size_t>(config.n_max));
    sol.coefficients.F_minus.resize(static_cast<std::size_t>(config.n_max));
  }
  const auto& g = config.geometry;
  sol.modes = mode_table(sol.coefficients.n_max(), g);
  sol.projections = mode_projections(boundary_forcing(sol.coefficients, g), sol.modes, g);
  sol.densities = solve_densities(sol.projections, sol.modes, config.delta);
  estimate_tail(sol.densities, g, decay_radius(s, sol.coefficients));
  return sol;
}

cplx eval_potential(const Solution& sol, EllipticPoint x) { return field_at(sol, x.rho, x.omega).v; }

std::array<cplx, 2> eval_gradient(const Solution& sol, double rho, double omega) {
  const FieldSample s = field_at(sol, rho, omega);
  return {s.v_rho, s.v_omega};
}

std::array<cplx, 2> eval_gradient_shell(const Solution& sol, double rho, double omega) {
  const auto& g = sol.config.geometry;
  if (!(rho > g.rho_i() && rho < g.rho_e())) {
    throw std::invalid_argument("eval_gradient_shell: rho must lie strictly inside the shell");
  }
  return eval_gradient(sol, rho, omega);
}

double dissipated_power_direct(const Solution& sol, QuadratureResolution quad) {
  const auto& g = sol.config.geometry;
  const int n_max = static_cast<int>(sol.densities.modes.size());
  const int M = quad.omega_nodes > 0 ? quad.omega_nodes : std::max(4 * n_max, 512);
  if (M < 4 * n_max) throw std::invalid_argument("dissipated_power_direct: need >= 4 n_max omega nodes");
  const QuadratureRule qr = composite_gauss_legendre(g.rho_i(), g.rho_e(), quad.rho_panels, quad.rho_points);
  const bool point_source = !std::holds_alternative<CoefficientSource>(sol.source);
  const double h = kTwoPi / M;
  RadialRow row;
  double total = 0.0;
  for (std::size_t i = 0; i < qr.nodes.size(); ++i) {
    const double rho = qr.nodes[i];
    radial_row(sol, rho, row);
    double line = 0.0;
    for (int j = 0; j < M; ++j) {
      const double omega = h * j;
      FieldSample s = sum_row(row, omega);
      if (point_source) {
        const FieldSample f = point_source_field(sol, rho, omega);
        s.v_rho += f.v_rho;
        s.v_omega += f.v_omega;
      }
      line += std::norm(s.v_rho) + std::norm(s.v_omega);
    }
    total += qr.weights[i] * line * h;
  }
  return sol.config.delta * total;
}

std::vector<double> spectral_energy_terms(const ModeProjection& proj, const std::vector<ModeData>& modes,
                                          double delta) {
  std::vector<double> terms;
  terms.reserve(proj.size());
  const double d2 = delta * delta;
  for (const auto& e : proj) {
    if (e.p1p == 0.0 && e.p2p == 0.0 && e.p1m == 0.0 && e.p2m == 0.0) {
      terms.push_back(0.0);
      continue;
    }
    const ModeData& m = modes.at(static_cast<std::size_t>(e.n - 1));
    const double k1 = (e.p1p * (e.p1p / m.norm_1p) + e.p1m * (e.p1m / m.norm_1m)) / (m.lambda1 * m.lambda1 + d2);
    const double k2 = (e.p2p * (e.p2p / m.norm_2p) + e.p2m * (e.p2m / m.norm_2m)) / (m.lambda2 * m.lambda2 + d2);
    terms.push_back(delta * (k1 + k2));
  }
  return terms;
}

double dissipated_power_spectral(const ModeProjection& proj, const std::vector<ModeData>& modes, double delta) {
  double sum = 0.0;
  for (double t : spectral_energy_terms(proj, modes, delta)) sum += t;
  return sum;
}

int dominant_mode(const Solution& sol) {
  const auto t = spectral_energy_terms(sol.projections, sol.modes, sol.config.delta);
  if (t.empty()) return 0;
  return static_cast<int>(std::max_element(t.begin(), t.end()) - t.begin()) + 1;
}

int n_max_cap(const ConfocalGeometry& g) {
  // Largest n with 2 n rho_e < 600.
  int n = static_cast<int>(std::floor(300.0 / g.rho_e()));
  while (n > 0 && 2.0 * n * g.rho_e() >= 600.0) --n;
  return n;
}

int adaptive_n_max(double delta, const ConfocalGeometry& g, std::optional<double> source_rho) {
  if (!(delta > 0.0)) throw std::invalid_argument("adaptive_n_max: delta must be > 0");
  const double gap = g.rho_e() - g.rho_i();
  const double res = std::max(0.0, 2.0 * std::log(1.0 / delta) / gap);
  const int n_res = static_cast<int>(std::ceil(res)) + 40;
  const int cap = n_max_cap(g);
  if (n_res > cap) {
    throw OverflowGuard("adaptive_n_max: n_max=" + std::to_string(n_res) + " needed for delta=" +
                        std::to_string(delta) + " exceeds the representable limit " + std::to_string(cap));
  }
  int n = n_res;
  if (source_rho && *source_rho > g.rho_e()) {
    const double tail = std::ceil(std::log(1e16) / (*source_rho - g.rho_e()));
    if (tail > n) n = tail > cap ? cap : static_cast<int>(tail);
  }
  return n;
}

SweepRecord sweep_point(const SourceSpec& s, const ConfocalGeometry& g, double delta,
                        const std::vector<EllipticPoint>& probes, const SweepOptions& opts) {
  const int n_max = opts.n_max > 0 ? opts.n_max : adaptive_n_max(delta, g, source_radius(s));
  const Solution sol = solve(s, ShellConfig(g, delta, n_max));
  SweepRecord r;
  r.delta = delta;
  r.n_max = n_max;
  r.E_direct = dissipated_power_direct(sol, opts.quad);
  r.E_spectral = dissipated_power_spectral(sol.projections, sol.modes, delta);
  r.truncation_warning = sol.densities.truncation_warning;
  const double root = std::sqrt(r.E_direct);
  for (const auto& p : probes) {
    const double v = std::abs(eval_potential(sol, p));
    r.probe_rho.push_back(p.rho);
    r.far_samples.push_back(v);
    r.normalized_far.push_back(root > 0.0 ? v / root : std::numeric_limits<double>::infinity());
  }
  return r;
}

std::vector<SweepRecord> sweep(const SourceSpec& s, const ConfocalGeometry& g, const std::vector<double>& deltas,
                               const std::vector<EllipticPoint>& probes, const SweepOptions& opts,
                               const std::function<void(const SweepRecord&)>& on_record) {
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    if (!(deltas[k] > 0.0)) throw std::invalid_argument("sweep: deltas must be positive");
    if (k > 0 && !(deltas[k] < deltas[k - 1])) throw std::invalid_argument("sweep: deltas must be descending");
  }
  for (const auto& p : probes) {
    if (!(p.rho > g.rho_e())) throw std::invalid_argument("sweep: probes must lie outside the shell");
  }
  std::vector<SweepRecord> out;
  out.reserve(deltas.size());
  const auto emit = [&](SweepRecord r) {
    if (on_record) on_record(r);
    out.push_back(std::move(r));
  };
  const std::size_t threads = static_cast<std::size_t>(std::max(1, opts.threads));
  if (threads == 1) {
    for (double d : deltas) emit(sweep_point(s, g, d, probes, opts));
    return out;
  }
  // Keep at most `threads` solves in flight; results are consumed in delta order.
  std::vector<std::future<SweepRecord>> inflight;
  std::size_t next = 0;
  const auto launch = [&] {
    const double d = deltas[next++];
    inflight.push_back(std::async(std::launch::async, [&, d] { return sweep_point(s, g, d, probes, opts); }));
  };
  while (next < deltas.size() && inflight.size() < threads) launch();
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    SweepRecord r;
    try {
      r = inflight[k].get();
    } catch (...) {
      for (std::size_t j = k + 1; j < inflight.size(); ++j) inflight[j].wait();
      throw;
    }
    emit(std::move(r));
    if (next < deltas.size()) launch();
  }
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::CALR:
      return "CALR";
    case Verdict::NoCALR:
      return "NoCALR";
    case Verdict::Indeterminate:
      break;
  }
  return "Indeterminate";
}

Diagnosis calr_classify(const std::vector<SweepRecord>& records, const Regime& regime) {
  Diagnosis d;
  if (records.size() < 4) {
    d.note = "fewer than 4 sweep points";
    return d;
  }
  std::vector<SweepRecord> recs = records;
  std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) { return a.delta > b.delta; });
  const double decades = std::log10(recs.front().delta / recs.back().delta);

  double e_min = std::numeric_limits<double>::infinity();
  double e_max = 0.0;
  for (const auto& r : recs) {
    e_min = std::min(e_min, r.E_direct);
    e_max = std::max(e_max, r.E_direct);
  }
  if (!(e_min > 0.0) || !std::isfinite(e_max)) {
    d.note = "energy is zero or not finite";
    return d;
  }
  d.energy_spread = e_max / e_min;
  d.total_growth = recs.back().E_direct / recs.front().E_direct;
  d.energy_increasing = true;
  for (std::size_t k = 1; k < recs.size(); ++k) {
    d.energy_increasing = d.energy_increasing && recs[k].E_direct > recs[k - 1].E_direct;
  }
  double mx = 0.0;
  double my = 0.0;
  const double cnt = static_cast<double>(recs.size());
  for (const auto& r : recs) {
    mx += std::log(1.0 / r.delta);
    my += std::log(r.E_direct);
  }
  mx /= cnt;
  my /= cnt;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& r : recs) {
    const double x = std::log(1.0 / r.delta) - mx;
    sxy += x * (std::log(r.E_direct) - my);
    sxx += x * x;
  }
  d.growth_exponent = sxy / sxx;

  d.far_field_vanishing = true;
  const std::size_t np = recs.front().normalized_far.size();
  for (std::size_t p = 0; p < np; ++p) {
    if (!(recs.front().probe_rho.at(p) > regime.far_bound_rho)) continue;
    ++d.far_probes;
    for (std::size_t k = 1; k < recs.size(); ++k) {
      d.far_field_vanishing = d.far_field_vanishing && recs[k].normalized_far.at(p) < recs[k - 1].normalized_far.at(p);
    }
  }
  if (d.far_probes == 0) d.far_field_vanishing = false;

  if (decades < 4.0 - 1e-9) {
    d.note = "sweep spans fewer than 4 decades of delta";
    return d;
  }
  if (d.energy_increasing && d.growth_exponent >= 0.1 && (d.far_probes == 0 || d.far_field_vanishing)) {
    d.verdict = Verdict::CALR;
    if (d.far_probes == 0) d.note = "no probe beyond the far bound; verdict from energy alone";
  } else if (e_max <= 2.0 * recs.front().E_direct && d.growth_exponent <= 0.0) {
    d.verdict = Verdict::NoCALR;
  } else {
    d.note = "energy neither clearly blowing up nor bounded";
  }
  return d;
}

}  // namespace calr
