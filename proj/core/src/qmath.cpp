#include "qent/qmath.hpp"

#include <cstdio>
#include <stdexcept>

namespace qent {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

}  // namespace

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

Vec4 kron(const Vec2& a, const Vec2& b) {
  Vec4 out;
  out << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return out;
}

double hermiticity_deviation(const Mat4& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

double hermiticity_deviation(const Mat2& m) {
  return (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& m,
                                            const Tolerances& tol) {
  const double dev = hermiticity_deviation(m);
  if (!(dev <= tol.hermiticity)) {
    throw std::invalid_argument(
        "hermitian_eigenvalues: matrix is not Hermitian (max deviation " +
        format_double(dev) + " exceeds " + format_double(tol.hermiticity) +
        ")");
  }
  Eigen::SelfAdjointEigenSolver<Mat4> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::invalid_argument(
        "hermitian_eigenvalues: eigenvalue iteration failed to converge");
  }
  const auto& ev = solver.eigenvalues();  // ascending
  return {ev(3), ev(2), ev(1), ev(0)};
}

}  // namespace qent
