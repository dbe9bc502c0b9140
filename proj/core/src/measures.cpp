#include "qent/measures.hpp"

#include <algorithm>
#include <cmath>

#include "qent/phase_povm.hpp"

namespace qent {

namespace {

Mat4 spin_flip_kernel() {
  // (sigma_y x sigma_y): anti-diagonal (-1, 1, 1, -1), real.
  Mat4 s = Mat4::Zero();
  s(0, 3) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 0) = -1.0;
  return s;
}

// Eigenvalues at or below this fraction of the largest one are treated as
// exact zeros before taking square roots. Without the floor, rank-deficient
// inputs turn O(eps) eigenvalue noise into O(sqrt(eps)) ~ 1e-8 errors, well
// above the 1e-9 accuracy the concurrence promises.
constexpr double kSpectrumNoiseFloor = 1e-13;

Mat4 hermitian_sqrt(const Mat4& m) {
  Eigen::SelfAdjointEigenSolver<Mat4> solver(m);
  const double floor =
      kSpectrumNoiseFloor * std::max(solver.eigenvalues().maxCoeff(), 0.0);
  Eigen::Vector4d roots;
  for (int i = 0; i < 4; ++i) {
    const double ev = solver.eigenvalues()(i);
    roots(i) = ev <= floor ? 0.0 : std::sqrt(ev);
  }
  return solver.eigenvectors() * roots.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace

double concurrence_pure(const PureState& psi) {
  const Vec4& a = psi.amplitudes();
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

double concurrence_mixed(const DensityMatrix& rho) {
  static const Mat4 s = spin_flip_kernel();
  const Mat4 root = hermitian_sqrt(rho.matrix());
  const Mat4 flipped = s * rho.matrix().conjugate() * s;
  // Hermitian and similar to rho * flipped, so its eigenvalues are the
  // squared Wootters numbers.
  const Mat4 core = root * flipped * root;
  const auto eigs = hermitian_eigenvalues(core);
  const double floor = kSpectrumNoiseFloor * std::max(eigs[0], 0.0);
  double mu[4];
  for (int i = 0; i < 4; ++i) {
    mu[i] = eigs[i] <= floor ? 0.0 : std::sqrt(eigs[i]);
  }
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

Mat4 partial_transpose(const DensityMatrix& rho) {
  Mat4 out = rho.matrix();
  for (int bi = 0; bi < 2; ++bi) {
    for (int bj = 0; bj < 2; ++bj) {
      out.block<2, 2>(2 * bi, 2 * bj) =
          rho.matrix().block<2, 2>(2 * bi, 2 * bj).transpose().eval();
    }
  }
  return out;
}

bool is_ppt(const DensityMatrix& rho) {
  const auto eigs = hermitian_eigenvalues(partial_transpose(rho));
  return eigs.back() >= -default_tolerances().psd;
}

double negativity(const DensityMatrix& rho) {
  const auto eigs = hermitian_eigenvalues(partial_transpose(rho));
  double total = 0.0;
  for (double e : eigs) {
    if (e < 0.0) {
      total -= e;
    }
  }
  return total;
}

MeasureReport measure_report(const DensityMatrix& rho,
                             const OptimizerConfig& cfg) {
  MeasureReport report;
  report.gamma = gamma_closed_form(rho);
  report.gamma_sup = coordinate_ascent(rho, cfg).value;
  report.concurrence = concurrence_mixed(rho);
  report.negativity = negativity(rho);
  report.is_ppt = is_ppt(rho);
  return report;
}

}  // namespace qent
