#include "calr/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "calr/errors.hpp"
#include "calr/spectrum.hpp"

namespace calr {

double cross_kernel(const CurvePanel& target, const CurvePanel& source) {
  const Vec2 d = target.node - source.node;
  return dot(d, target.normal) / (kTwoPi * norm2(d));
}

double np_kernel(std::span<const CurvePanel> curve, std::size_t i, std::size_t j) {
  if (i >= curve.size() || j >= curve.size()) throw std::out_of_range("np_kernel: index out of range");
  if (i == j) return curve[i].curvature / (2.0 * kTwoPi);
  return cross_kernel(curve[i], curve[j]);
}

Eigen::MatrixXd assemble_single_np(std::span<const CurvePanel> curve) {
  const auto N = static_cast<Eigen::Index>(curve.size());
  Eigen::MatrixXd K(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      K(i, j) = np_kernel(curve, static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                curve[static_cast<std::size_t>(j)].weight;
    }
  }
  return K;
}

BlockNPMatrix assemble_block_np(std::span<const CurvePanel> gi, std::span<const CurvePanel> ge,
                                AssemblyOptions opts) {
  if (gi.size() != ge.size() || gi.empty()) {
    throw std::invalid_argument("assemble_block_np: curves need the same nonzero node count");
  }
  double min_dist2 = std::numeric_limits<double>::infinity();
  for (const auto& a : gi) {
    for (const auto& b : ge) min_dist2 = std::min(min_dist2, norm2(a.node - b.node));
  }
  if (std::sqrt(min_dist2) < 1e-8) throw CurveOverlap("assemble_block_np: curves touch or overlap");

  const auto N = static_cast<Eigen::Index>(gi.size());
  BlockNPMatrix out;
  out.n_inner = out.n_outer = static_cast<int>(N);
  out.matrix.resize(2 * N, 2 * N);
  const Eigen::MatrixXd Ki = assemble_single_np(gi);
  const Eigen::MatrixXd Ke = assemble_single_np(ge);
  out.matrix.topLeftCorner(N, N) = opts.flip_inner_block ? Ki : Eigen::MatrixXd(-Ki);
  out.matrix.bottomRightCorner(N, N) = Ke;
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      out.matrix(i, N + j) = -cross_kernel(gi[ui], ge[uj]) * ge[uj].weight;
      out.matrix(N + i, j) = cross_kernel(ge[ui], gi[uj]) * gi[uj].weight;
    }
  }
  return out;
}

SpectrumReport numeric_spectrum(const Eigen::MatrixXd& m, int count, std::span<const double> analytic) {
  if (m.rows() != m.cols()) throw std::invalid_argument("numeric_spectrum: matrix must be square");
  if (count < 0 || 4 * static_cast<Eigen::Index>(count) > m.rows()) {
    throw std::invalid_argument("numeric_spectrum: count must be <= size / 4");
  }
  if (static_cast<std::size_t>(count) > analytic.size()) {
    throw std::invalid_argument("numeric_spectrum: fewer analytic candidates than requested eigenvalues");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  if (es.info() != Eigen::Success) throw EigensolveFailure("numeric_spectrum: eigensolver did not converge");
  const Eigen::VectorXcd ev = es.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return std::abs(ev[a]) > std::abs(ev[b]); });

  SpectrumReport rep;
  for (int k = 0; k < count; ++k) {
    const std::complex<double> v = ev[order[static_cast<std::size_t>(k)]];
    if (std::abs(v.imag()) > 1e-8) {
      throw EigensolveFailure("numeric_spectrum: eigenvalue " + std::to_string(v.real()) +
                              " has imaginary part " + std::to_string(v.imag()));
    }
    rep.max_imag = std::max(rep.max_imag, std::abs(v.imag()));
    rep.numeric.push_back(v.real());
  }

  std::vector<bool> used(analytic.size(), false);
  for (double x : rep.numeric) {
    std::size_t best = analytic.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < analytic.size(); ++c) {
      if (used[c]) continue;
      const double dist = std::abs(x - analytic[c]);
      const bool same_sign = std::signbit(x) == std::signbit(analytic[c]);
      const bool best_same = best < analytic.size() && std::signbit(x) == std::signbit(analytic[best]);
      if (dist < best_dist || (dist == best_dist && same_sign && !best_same)) {
        best = c;
        best_dist = dist;
      }
    }
    used[best] = true;
    const double a = analytic[best];
    const double err = std::abs(x - a) / std::abs(a);
    rep.matched.push_back(a);
    rep.rel_errors.push_back(err);
    rep.max_rel_error = std::max(rep.max_rel_error, err);
  }
  return rep;
}

std::vector<double> analytic_block_spectrum(const ConfocalGeometry& g, int n_max) {
  std::vector<double> out{-0.5, 0.5};
  for (int n = 1; n <= n_max; ++n) {
    const auto [l1, l2] = np_eigenvalues(n, g);
    out.insert(out.end(), {l1, -l1, l2, -l2});
  }
  return out;
}

std::vector<double> analytic_single_spectrum(double rho0, int n_max) {
  std::vector<double> out{0.5};
  for (int n = 1; n <= n_max; ++n) {
    const double a = single_ellipse_np(n, rho0).alpha;
    out.insert(out.end(), {a, -a});
  }
  return out;
}

}  // namespace calr
