#include "qent/phase_povm.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void check_gamma_param(double gamma_param, const char* who) {
  if (!(gamma_param >= 0.0 && gamma_param <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": gamma_param = " +
                                format_double(gamma_param) +
                                " outside [0, 1]");
  }
}

}  // namespace

PhaseGrid::PhaseGrid(int n_plus_nodes, int n_minus_nodes)
    : n_plus(n_plus_nodes), n_minus(n_minus_nodes) {
  if (n_plus < 4 || n_minus < 4) {
    throw std::invalid_argument(
        "PhaseGrid: needs at least 4 nodes per axis, got " +
        std::to_string(n_plus) + " x " + std::to_string(n_minus));
  }
}

double PhaseGrid::node_plus(int i) const { return kTwoPi * i / n_plus; }

double PhaseGrid::node_minus(int j) const { return kTwoPi * j / n_minus; }

Mat2 single_qubit_povm_element(double phi, double gamma_param) {
  check_gamma_param(gamma_param, "single_qubit_povm_element");
  const Complex phase(std::cos(phi), std::sin(phi));
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  m(1, 0) = gamma_param * phase;
  m(0, 1) = gamma_param * std::conj(phase);
  return m / kTwoPi;
}

Mat4 joint_povm_element(double phi_plus, double phi_minus,
                        double gamma_param) {
  check_gamma_param(gamma_param, "joint_povm_element");
  const double u = (phi_plus + phi_minus) / 2.0;
  const double v = (phi_plus - phi_minus) / 2.0;
  const Mat4 first = kron(single_qubit_povm_element(u, gamma_param),
                          single_qubit_povm_element(v, gamma_param));
  const Mat4 second = kron(single_qubit_povm_element(u + kPi, gamma_param),
                           single_qubit_povm_element(v + kPi, gamma_param));
  return 0.5 * (first + second);
}

JointPhaseDistribution joint_phase_distribution(const DensityMatrix& rho,
                                                const PhaseGrid& grid,
                                                double gamma_param) {
  check_gamma_param(gamma_param, "joint_phase_distribution");
  if (!(gamma_param > 0.0)) {
    throw std::invalid_argument(
        "joint_phase_distribution: gamma_param must be positive");
  }
  const Tolerances& tol = default_tolerances();
  JointPhaseDistribution dist;
  dist.grid = grid;
  dist.gamma_param = gamma_param;
  dist.values.resize(static_cast<std::size_t>(grid.n_plus) * grid.n_minus);
  double integral = 0.0;
  const double cell = (kTwoPi / grid.n_plus) * (kTwoPi / grid.n_minus);
  for (int i = 0; i < grid.n_plus; ++i) {
    for (int j = 0; j < grid.n_minus; ++j) {
      const Mat4 element =
          joint_povm_element(grid.node_plus(i), grid.node_minus(j),
                             gamma_param);
      const Complex p = (rho.matrix() * element).trace();
      const double density = p.real();
      if (!(density >= -tol.density_floor)) {
        throw std::invalid_argument(
            "joint_phase_distribution: negative density " +
            format_double(density) + " at grid node (" + std::to_string(i) +
            ", " + std::to_string(j) + ")");
      }
      dist.values[static_cast<std::size_t>(i) * grid.n_minus + j] = density;
      integral += density * cell;
    }
  }
  // Periodic trapezoid rule: with the endpoint identified with node 0, the
  // trapezoid weights collapse to the uniform cell weight used above.
  if (!(std::abs(integral - 1.0) <= tol.normalization)) {
    throw std::invalid_argument(
        "joint_phase_distribution: density integrates to " +
        format_double(integral) + ", not 1");
  }
  return dist;
}

FourierPair fourier_components(const JointPhaseDistribution& dist) {
  const PhaseGrid& grid = dist.grid;
  const double step_plus = kTwoPi / grid.n_plus;
  const double step_minus = kTwoPi / grid.n_minus;
  FourierPair out;
  for (int j = 0; j < grid.n_minus; ++j) {
    Complex moment = 0.0;
    for (int i = 0; i < grid.n_plus; ++i) {
      const double phi = grid.node_plus(i);
      moment += Complex(std::cos(phi), std::sin(phi)) * dist.value(i, j);
    }
    out.gamma_plus += std::abs(moment) * step_plus;
  }
  out.gamma_plus /= grid.n_minus;
  for (int i = 0; i < grid.n_plus; ++i) {
    Complex moment = 0.0;
    for (int j = 0; j < grid.n_minus; ++j) {
      const double phi = grid.node_minus(j);
      moment += Complex(std::cos(phi), std::sin(phi)) * dist.value(i, j);
    }
    out.gamma_minus += std::abs(moment) * step_minus;
  }
  out.gamma_minus /= grid.n_plus;
  return out;
}

double gamma_numeric(const DensityMatrix& rho, const PhaseGrid& grid) {
  const JointPhaseDistribution dist = joint_phase_distribution(rho, grid, 1.0);
  const FourierPair f = fourier_components(dist);
  return 2.0 * kTwoPi * std::abs(f.gamma_plus - f.gamma_minus);
}

double gamma_closed_form(const DensityMatrix& rho) {
  return 2.0 *
         std::abs(std::abs(rho.corner_outer()) - std::abs(rho.corner_inner()));
}

}  // namespace qent
