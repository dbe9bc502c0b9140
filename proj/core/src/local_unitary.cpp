#include "qent/local_unitary.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qent {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double unitarity_deviation(const Mat2& u) {
  return (u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff();
}

Mat2 mixer(double mix, double phase) {
  const double c = std::cos(mix);
  const double s = std::sin(mix);
  const Complex e(std::cos(phase), std::sin(phase));
  Mat2 u;
  u(0, 0) = c;
  u(0, 1) = e * s;
  u(1, 0) = -std::conj(e) * s;
  u(1, 1) = c;
  return u;
}

void check_range_closed(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw std::invalid_argument("build_from_params: " + std::string(name) +
                                " = " + format_double(v) + " outside [" +
                                format_double(lo) + ", " + format_double(hi) +
                                "]");
  }
}

void check_range_half_open(double v, double hi, const char* name) {
  if (!(v >= 0.0 && v < hi)) {
    throw std::invalid_argument("build_from_params: " + std::string(name) +
                                " = " + format_double(v) + " outside [0, " +
                                format_double(hi) + ")");
  }
}

Mat2 haar_one_qubit(SplitMix64& rng) {
  Mat2 g;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  // Gram-Schmidt with positive real R diagonal, which makes the result
  // Haar-distributed rather than merely unitary.
  Vec2 q1 = g.col(0);
  q1 /= q1.norm();
  const Complex overlap = q1.dot(g.col(1));  // conjugates the first factor
  Vec2 q2 = g.col(1) - overlap * q1;
  q2 /= q2.norm();
  Mat2 u;
  u.col(0) = q1;
  u.col(1) = q2;
  return u;
}

}  // namespace

FullLocalUnitary::FullLocalUnitary(const Mat2& u_a, const Mat2& u_b,
                                   const Tolerances& tol)
    : u_a_(u_a), u_b_(u_b) {
  if (!u_a_.allFinite() || !u_b_.allFinite()) {
    throw std::invalid_argument("FullLocalUnitary: non-finite entries");
  }
  const double dev_a = unitarity_deviation(u_a_);
  if (!(dev_a <= tol.unitarity)) {
    throw std::invalid_argument(
        "FullLocalUnitary: factor A unitarity deviation " +
        format_double(dev_a) + " exceeds " + format_double(tol.unitarity));
  }
  const double dev_b = unitarity_deviation(u_b_);
  if (!(dev_b <= tol.unitarity)) {
    throw std::invalid_argument(
        "FullLocalUnitary: factor B unitarity deviation " +
        format_double(dev_b) + " exceeds " + format_double(tol.unitarity));
  }
}

FullLocalUnitary build_from_params(const LocalUnitaryParams& params) {
  check_range_closed(params.phi_mix, 0.0, kHalfPi, "phi_mix");
  check_range_closed(params.theta_mix, 0.0, kHalfPi, "theta_mix");
  check_range_half_open(params.theta_a, kTwoPi, "theta_a");
  check_range_half_open(params.theta_b, kTwoPi, "theta_b");
  return FullLocalUnitary(mixer(params.phi_mix, params.theta_a),
                          mixer(params.theta_mix, params.theta_b));
}

DensityMatrix apply(const FullLocalUnitary& u, const DensityMatrix& rho) {
  const Mat4 w = kron(u.u_a(), u.u_b());
  return DensityMatrix(w * rho.matrix() * w.adjoint());
}

DensityMatrix apply_phase_only(const PhaseOnlyParams& params,
                               const DensityMatrix& rho) {
  if (!std::isfinite(params.theta_a) || !std::isfinite(params.theta_b)) {
    throw std::invalid_argument("apply_phase_only: non-finite phase");
  }
  const Complex ea(std::cos(params.theta_a), std::sin(params.theta_a));
  const Complex eb(std::cos(params.theta_b), std::sin(params.theta_b));
  const Complex d[4] = {Complex(1.0, 0.0), eb, ea, ea * eb};
  Mat4 m;
  for (int k = 0; k < 4; ++k) {
    for (int l = 0; l < 4; ++l) {
      m(k, l) = d[k] * rho.matrix()(k, l) * std::conj(d[l]);
    }
  }
  return DensityMatrix(m);
}

FullLocalUnitary haar_local_unitary(RngSeed seed) {
  SplitMix64 rng(seed);
  const Mat2 u_a = haar_one_qubit(rng);
  const Mat2 u_b = haar_one_qubit(rng);
  return FullLocalUnitary(u_a, u_b);
}

}  // namespace qent
