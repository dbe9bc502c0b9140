#include "qent/states.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qent {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void check_finite(const Mat4& m, const char* who) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(who) +
                                ": matrix has non-finite entries");
  }
}

Vec4 pure_from_stream(SplitMix64& rng) {
  Vec4 amps;
  for (int i = 0; i < 4; ++i) {
    const double re = rng.next_gaussian();
    const double im = rng.next_gaussian();
    amps(i) = Complex(re, im);
  }
  const double norm = amps.norm();
  if (!(norm > 0.0)) {
    throw std::runtime_error("haar_random_pure: degenerate Gaussian draw");
  }
  return amps / norm;
}

}  // namespace

PureState::PureState(const Vec4& amplitudes, const Tolerances& tol)
    : amps_(amplitudes) {
  if (!amps_.allFinite()) {
    throw std::invalid_argument("PureState: non-finite amplitude");
  }
  const double norm = amps_.norm();
  if (!(std::abs(norm - 1.0) <= tol.state_norm)) {
    throw std::invalid_argument("PureState: vector norm " +
                                format_double(norm) + " is not 1 within " +
                                format_double(tol.state_norm));
  }
}

DensityMatrix::DensityMatrix(const Mat4& m, const Tolerances& tol) : m_(m) {
  check_finite(m_, "DensityMatrix");
  const double herm_dev = hermiticity_deviation(m_);
  if (!(herm_dev <= tol.hermiticity)) {
    throw std::invalid_argument("DensityMatrix: Hermiticity deviation " +
                                format_double(herm_dev) + " exceeds " +
                                format_double(tol.hermiticity));
  }
  const double trace_err = std::abs(m_.trace().real() - 1.0) +
                           std::abs(m_.trace().imag());
  if (!(trace_err <= tol.trace)) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                format_double(trace_err));
  }
  const auto eigs = hermitian_eigenvalues(m_, tol);
  if (!(eigs.back() >= -tol.psd)) {
    throw std::invalid_argument(
        "DensityMatrix: negative eigenvalue " + format_double(eigs.back()) +
        " below the positive-semidefinite floor -" + format_double(tol.psd));
  }
}

PureState bell_state(BellKind kind) {
  const double s = 1.0 / std::sqrt(2.0);
  Vec4 amps = Vec4::Zero();
  switch (kind) {
    case BellKind::PhiPlus:
      amps(0) = s;
      amps(3) = s;
      break;
    case BellKind::PhiMinus:
      amps(0) = s;
      amps(3) = -s;
      break;
    case BellKind::PsiPlus:
      amps(1) = s;
      amps(2) = s;
      break;
    case BellKind::PsiMinus:
      amps(1) = s;
      amps(2) = -s;
      break;
  }
  return PureState(amps);
}

DensityMatrix density_from_pure(const PureState& psi) {
  const Vec4& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint());
}

DensityMatrix horodecki_state(double a, double p) {
  if (!(a >= 0.0 && a <= 1.0)) {
    throw std::invalid_argument("horodecki_state: parameter a = " +
                                format_double(a) + " outside [0, 1]");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("horodecki_state: parameter p = " +
                                format_double(p) + " outside [0, 1]");
  }
  const double b = std::sqrt(1.0 - a * a);
  Vec4 outer = Vec4::Zero();  // a|00> + b|11>
  outer(0) = a;
  outer(3) = b;
  Vec4 inner = Vec4::Zero();  // a|01> + b|10>
  inner(1) = a;
  inner(2) = b;
  const Mat4 m = p * (outer * outer.adjoint()).eval() +
                 (1.0 - p) * (inner * inner.adjoint()).eval();
  return DensityMatrix(m);
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("werner_state: parameter p = " +
                                format_double(p) + " outside [0, 1]");
  }
  const auto projector = [](BellKind kind) {
    const Vec4& a = bell_state(kind).amplitudes();
    return (a * a.adjoint()).eval();
  };
  const Mat4 m = p * projector(BellKind::PsiMinus) +
                 (1.0 - p) / 3.0 *
                     (projector(BellKind::PhiPlus) +
                      projector(BellKind::PhiMinus) +
                      projector(BellKind::PsiPlus));
  return DensityMatrix(m);
}

DensityMatrix bell_diagonal_state(const std::array<double, 4>& lambdas) {
  double sum = 0.0;
  for (double l : lambdas) {
    if (!(l >= -default_tolerances().simplex)) {
      throw std::invalid_argument("bell_diagonal_state: negative weight " +
                                  format_double(l));
    }
    sum += l;
  }
  if (!(std::abs(sum - 1.0) <= default_tolerances().simplex)) {
    throw std::invalid_argument("bell_diagonal_state: weights sum to " +
                                format_double(sum) + ", not 1");
  }
  const double outer_diag = (lambdas[0] + lambdas[1]) / 2.0;
  const double inner_diag = (lambdas[2] + lambdas[3]) / 2.0;
  Mat4 m = Mat4::Zero();
  m(0, 0) = outer_diag;
  m(1, 1) = inner_diag;
  m(2, 2) = inner_diag;
  m(3, 3) = outer_diag;
  m(0, 3) = (lambdas[0] - lambdas[1]) / 2.0;
  m(3, 0) = m(0, 3);
  m(1, 2) = (lambdas[2] - lambdas[3]) / 2.0;
  m(2, 1) = m(1, 2);
  return DensityMatrix(m);
}

DensityMatrix product_state(const Mat2& rho_a, const Mat2& rho_b) {
  const Tolerances& tol = default_tolerances();
  const auto check_factor = [&tol](const Mat2& rho, const char* side) {
    if (!rho.allFinite()) {
      throw std::invalid_argument(std::string("product_state: factor ") +
                                  side + " has non-finite entries");
    }
    if (!(hermiticity_deviation(rho) <= tol.hermiticity)) {
      throw std::invalid_argument(std::string("product_state: factor ") +
                                  side + " is not Hermitian");
    }
    const double trace_err = std::abs(rho.trace().real() - 1.0) +
                             std::abs(rho.trace().imag());
    if (!(trace_err <= tol.trace)) {
      throw std::invalid_argument(std::string("product_state: factor ") +
                                  side + " trace deviates from 1 by " +
                                  format_double(trace_err));
    }
    Eigen::SelfAdjointEigenSolver<Mat2> solver(rho, Eigen::EigenvaluesOnly);
    if (!(solver.eigenvalues()(0) >= -tol.psd)) {
      throw std::invalid_argument(std::string("product_state: factor ") +
                                  side + " has negative eigenvalue " +
                                  format_double(solver.eigenvalues()(0)));
    }
  };
  check_factor(rho_a, "A");
  check_factor(rho_b, "B");
  return DensityMatrix(kron(rho_a, rho_b));
}

PureState haar_random_pure(RngSeed seed) {
  SplitMix64 rng(seed);
  return PureState(pure_from_stream(rng));
}

DensityMatrix random_mixed(RngSeed seed, int rank) {
  if (rank < 1 || rank > 4) {
    throw std::invalid_argument("random_mixed: rank " + std::to_string(rank) +
                                " outside [1, 4]");
  }
  SplitMix64 rng(seed);
  std::array<Vec4, 4> states;
  for (int i = 0; i < rank; ++i) {
    states[i] = pure_from_stream(rng);
  }
  std::array<double, 4> weights{};
  double total = 0.0;
  for (int i = 0; i < rank; ++i) {
    weights[i] = -std::log(rng.next_double_positive());
    total += weights[i];
  }
  Mat4 m = Mat4::Zero();
  for (int i = 0; i < rank; ++i) {
    m += (weights[i] / total) * (states[i] * states[i].adjoint()).eval();
  }
  return DensityMatrix(m);
}

}  // namespace qent
