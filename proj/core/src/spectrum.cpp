#include "calr/spectrum.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <string>

#include "calr/errors.hpp"

namespace calr {

namespace {

// e^{-n rho} cosh(n rho') and e^{-n rho} sinh(n rho') for rho >= rho', written so that
// nothing overflows: (e^{-n(rho - rho')} +- e^{-n(rho + rho')}) / 2.
double ecosh(int n, double rho, double rho_p) {
  return 0.5 * (std::exp(-n * (rho - rho_p)) + std::exp(-n * (rho + rho_p)));
}
double esinh(int n, double rho, double rho_p) {
  return 0.5 * (std::exp(-n * (rho - rho_p)) - std::exp(-n * (rho + rho_p)));
}

void require_normal(double v, const char* what, int n) {
  if (!std::isfinite(v) || std::abs(v) < DBL_MIN) {
    throw OverflowGuard(std::string("mode_data: ") + what + " not representable at n=" +
                        std::to_string(n));
  }
}

}  // namespace

SingleEllipseMode single_ellipse_np(int n, double rho0) {
  if (n < 0 || !(rho0 > 0.0)) throw std::invalid_argument("single_ellipse_np: need n >= 0, rho0 > 0");
  const double x = 2.0 * n * rho0;
  const double beta = 0.5 * (-std::exp(x) + std::exp(-x));
  if (!std::isfinite(beta)) throw OverflowGuard("single_ellipse_np: beta overflows");
  return {n, 0.5 * std::exp(-x), beta};
}

BlockMatrices block_matrices(int n, const ConfocalGeometry& g) {
  if (n < 0) throw std::invalid_argument("block_matrices: n must be >= 0");
  const double ri = g.rho_i();
  const double re = g.rho_e();
  const double ei = 0.5 * std::exp(-2.0 * n * ri);
  const double ee = 0.5 * std::exp(-2.0 * n * re);
  const double sh = esinh(n, re, ri);  // sinh(n rho_i) e^{-n rho_e}
  const double ch = ecosh(n, re, ri);  // cosh(n rho_i) e^{-n rho_e}
  BlockMatrices m;
  m.A << -ei, sh, ch, ee;
  m.B << ei, ch, sh, -ee;
  return m;
}

std::pair<double, double> np_eigenvalues(int n, const ConfocalGeometry& g) {
  if (n < 0) throw std::invalid_argument("np_eigenvalues: n must be >= 0");
  const double Ei = std::exp(-2.0 * n * g.rho_i());
  const double Ee = std::exp(-2.0 * n * g.rho_e());
  const double q = std::exp(-n * (g.rho_e() - g.rho_i()));
  const double s = std::hypot(Ei - Ee, 2.0 * q);
  const double l1 = 0.25 * (Ee - Ei - s);
  // lambda1 lambda2 = det A = -q^2 / 4.
  const double l2 = -(q / (4.0 * l1)) * q;
  return {l1, l2};
}

ModeData mode_data(int n, const ConfocalGeometry& g) {
  if (n < 1) throw std::invalid_argument("mode_data: n must be >= 1");
  const double ri = g.rho_i();
  const double re = g.rho_e();
  const double Ei = std::exp(-2.0 * n * ri);
  const double Ee = std::exp(-2.0 * n * re);
  const double q = std::exp(-n * (re - ri));
  const double s = std::hypot(Ei - Ee, 2.0 * q);

  ModeData m;
  m.n = n;
  std::tie(m.lambda1, m.lambda2) = np_eigenvalues(n, g);
  m.a1 = Ee + Ei + s;
  // a1 a2 = (Ee + Ei)^2 - s^2 = -4 q^2 (1 - Ei^2).
  m.a2 = -4.0 * (q / m.a1) * q * (1.0 - Ei) * (1.0 + Ei);
  m.b = -2.0 * q * (1.0 + Ei);

  const double c_ii = 0.5 * (1.0 + Ei);  // e^{-n rho_i} cosh(n rho_i)
  const double c_ie = ecosh(n, re, ri);  // e^{-n rho_e} cosh(n rho_i)
  const double c_ee = 0.5 * (1.0 + Ee);
  const double s_ii = 0.5 * (1.0 - Ei);
  const double s_ie = esinh(n, re, ri);
  const double s_ee = 0.5 * (1.0 - Ee);
  const double pn = kPi / n;
  const double a1 = m.a1;
  const double a2 = m.a2;
  const double b = m.b;
  m.norm_1p = pn * (a1 * a1 * c_ii + 2.0 * a1 * b * c_ie + b * b * c_ee);
  m.norm_1m = pn * (b * b * s_ii + 2.0 * a2 * b * s_ie + a2 * a2 * s_ee);
  m.norm_2p = pn * (a2 * a2 * c_ii + 2.0 * a2 * b * c_ie + b * b * c_ee);
  m.norm_2m = pn * (b * b * s_ii + 2.0 * a1 * b * s_ie + a1 * a1 * s_ee);

  require_normal(m.lambda1, "lambda1", n);
  require_normal(m.lambda2, "lambda2", n);
  require_normal(m.a1, "a1", n);
  require_normal(m.a2, "a2", n);
  require_normal(m.b, "b", n);
  require_normal(m.norm_1p, "norm_1p", n);
  require_normal(m.norm_1m, "norm_1m", n);
  require_normal(m.norm_2p, "norm_2p", n);
  require_normal(m.norm_2m, "norm_2m", n);
  return m;
}

std::vector<ModeData> mode_table(int n_max, const ConfocalGeometry& g) {
  std::vector<ModeData> table;
  table.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
  for (int n = 1; n <= n_max; ++n) table.push_back(mode_data(n, g));
  return table;
}

Eigen::Matrix2d s_gram(int n, const ConfocalGeometry& g, Parity parity) {
  if (n < 1) throw std::invalid_argument("s_gram: n must be >= 1");
  const double ri = g.rho_i();
  const double re = g.rho_e();
  const double pn = kPi / n;
  Eigen::Matrix2d G;
  if (parity == Parity::Cos) {
    const double off = ecosh(n, re, ri);
    G << 0.5 * (1.0 + std::exp(-2.0 * n * ri)), off, off, 0.5 * (1.0 + std::exp(-2.0 * n * re));
  } else {
    const double off = esinh(n, re, ri);
    G << 0.5 * (1.0 - std::exp(-2.0 * n * ri)), off, off, 0.5 * (1.0 - std::exp(-2.0 * n * re));
  }
  return pn * G;
}

std::string_view to_string(RegimeKind kind) { return kind == RegimeKind::Thin ? "Thin" : "Thick"; }

Regime critical_radius(double rho_i, double rho_e) {
  if (!(rho_i > 0.0) || !(rho_e > rho_i)) {
    throw std::invalid_argument("critical_radius: need 0 < rho_i < rho_e");
  }
  if (rho_e <= 3.0 * rho_i) {
    return {RegimeKind::Thin, 0.5 * (3.0 * rho_e - rho_i), 2.0 * rho_e - rho_i};
  }
  return {RegimeKind::Thick, 2.0 * (rho_e - rho_i), 3.0 * rho_e - 4.0 * rho_i};
}

AsymptoticRates asymptotic_rates(const ConfocalGeometry& g) {
  const double ri = g.rho_i();
  const double re = g.rho_e();
  const double gap = re - ri;
  AsymptoticRates r;
  if (re <= 3.0 * ri) {
    r.kind = RegimeKind::Thin;
    r.lambda1 = r.lambda2 = gap;
    r.a1 = r.a2 = r.b = gap;
    r.norm_1p = r.norm_1m = r.norm_2p = r.norm_2m = 2.0 * gap;
  } else {
    r.kind = RegimeKind::Thick;
    r.lambda1 = 2.0 * ri;
    r.lambda2 = 2.0 * (re - 2.0 * ri);
    r.a1 = 2.0 * ri;
    r.a2 = 2.0 * (re - 2.0 * ri);
    r.b = gap;
    r.norm_1p = r.norm_2m = 4.0 * ri;
    r.norm_1m = r.norm_2p = 2.0 * gap;
  }
  return r;
}

}  // namespace calr
