#include "qent/phase_povm.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qent/qmath.hpp"
#include "qent/rng.hpp"
#include "qent/states.hpp"

namespace {

using qent::Complex;
using qent::Mat2;
using qent::Mat4;

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

qent::DensityMatrix rotated_bell_density() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double sign = ((i == 3) != (j == 3)) ? -1.0 : 1.0;
      m(i, j) = Complex(0.25 * sign, 0.0);
    }
  }
  return qent::DensityMatrix(m);
}

}  // namespace

TEST_CASE("single-qubit element entries") {
  const Mat2 flat = qent::single_qubit_povm_element(0.0, 1.0);
  const double w = 1.0 / kTwoPi;
  CHECK(std::abs(flat(0, 0) - Complex(w)) < 1e-15);
  CHECK(std::abs(flat(0, 1) - Complex(w)) < 1e-15);
  CHECK(std::abs(flat(1, 0) - Complex(w)) < 1e-15);
  CHECK(std::abs(flat(1, 1) - Complex(w)) < 1e-15);

  const Mat2 tilted = qent::single_qubit_povm_element(kPi / 2.0, 0.5);
  CHECK(std::abs(tilted(1, 0) - Complex(0.0, 0.5 * w)) < 1e-15);
  CHECK(std::abs(tilted(0, 1) - Complex(0.0, -0.5 * w)) < 1e-15);

  Eigen::SelfAdjointEigenSolver<Mat2> solver(flat);
  CHECK(std::abs(solver.eigenvalues()(0)) < 1e-15);
  CHECK(solver.eigenvalues()(1) == doctest::Approx(1.0 / kPi).epsilon(1e-12));
}

TEST_CASE("sharpness parameter is range-checked") {
  CHECK_THROWS_AS((void)qent::single_qubit_povm_element(0.0, -0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)qent::single_qubit_povm_element(0.0, 1.1),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)qent::joint_povm_element(0.0, 0.0, 1.0001),
                  std::invalid_argument);
}

TEST_CASE("single-qubit elements resolve the identity") {
  for (double gamma : {0.3, 0.7, 1.0}) {
    const int n = 16;
    Mat2 sum = Mat2::Zero();
    for (int k = 0; k < n; ++k) {
      sum += qent::single_qubit_povm_element(kTwoPi * k / n, gamma);
    }
    sum *= kTwoPi / n;
    CHECK((sum - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("joint element is 2pi-periodic with constant trace") {
  for (double phip : {0.0, 0.9, 4.4}) {
    for (double phim : {0.3, 2.8}) {
      const Mat4 base = qent::joint_povm_element(phip, phim, 1.0);
      const Mat4 shifted = qent::joint_povm_element(phip + kTwoPi, phim, 1.0);
      CHECK((base - shifted).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(base.trace().real() ==
            doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
      CHECK(qent::hermiticity_deviation(base) < 1e-15);
    }
  }
}

TEST_CASE("joint element overlap with the plus Bell projector") {
  const qent::DensityMatrix bell =
      qent::density_from_pure(qent::bell_state(qent::BellKind::PhiPlus));
  const Mat4 element = qent::joint_povm_element(0.0, 0.0, 1.0);
  const double overlap = (bell.matrix() * element).trace().real();
  CHECK(overlap == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-12));
}

TEST_CASE("phase grid validates and places nodes half-open") {
  CHECK_THROWS_AS(qent::PhaseGrid(3, 8), std::invalid_argument);
  CHECK_THROWS_AS(qent::PhaseGrid(8, 3), std::invalid_argument);
  const qent::PhaseGrid grid(8, 4);
  CHECK(grid.node_plus(0) == 0.0);
  CHECK(grid.node_plus(2) == doctest::Approx(kTwoPi / 4.0).epsilon(1e-15));
  CHECK(grid.node_minus(3) == doctest::Approx(3.0 * kTwoPi / 4.0).epsilon(1e-15));
}

TEST_CASE("distribution of the maximally mixed state is flat") {
  const qent::DensityMatrix mixed{Mat4(Mat4::Identity() * 0.25)};
  const auto dist = qent::joint_phase_distribution(mixed, qent::PhaseGrid(8, 8), 1.0);
  for (double v : dist.values) {
    CHECK(v == doctest::Approx(1.0 / (4.0 * kPi * kPi)).epsilon(1e-12));
  }
}

TEST_CASE("Bell distributions depend on a single phase axis") {
  const qent::DensityMatrix phip =
      qent::density_from_pure(qent::bell_state(qent::BellKind::PhiPlus));
  const qent::PhaseGrid grid(8, 4);
  const auto dist = qent::joint_phase_distribution(phip, grid, 1.0);
  for (int i = 0; i < grid.n_plus; ++i) {
    const double expected =
        (1.0 + std::cos(grid.node_plus(i))) / (4.0 * kPi * kPi);
    for (int j = 0; j < grid.n_minus; ++j) {
      CHECK(dist.value(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  const qent::DensityMatrix psip =
      qent::density_from_pure(qent::bell_state(qent::BellKind::PsiPlus));
  const auto dual = qent::joint_phase_distribution(psip, grid, 1.0);
  for (int i = 0; i < grid.n_plus; ++i) {
    for (int j = 0; j < grid.n_minus; ++j) {
      const double expected =
          (1.0 + std::cos(grid.node_minus(j))) / (4.0 * kPi * kPi);
      CHECK(dual.value(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("fourier components recover the corner moduli") {
  const qent::DensityMatrix phip =
      qent::density_from_pure(qent::bell_state(qent::BellKind::PhiPlus));
  const auto pair =
      qent::fourier_components(qent::joint_phase_distribution(phip, {}, 1.0));
  CHECK(pair.gamma_plus == doctest::Approx(0.5 / kTwoPi).epsilon(1e-12));
  CHECK(std::abs(pair.gamma_minus) < 1e-12);

  for (int index = 0; index < 10; ++index) {
    const qent::DensityMatrix rho =
        qent::random_mixed(qent::derive_stream(qent::RngSeed{310}, index),
                           1 + index % 4);
    for (double gamma : {0.7, 1.0}) {
      const auto f = qent::fourier_components(
          qent::joint_phase_distribution(rho, {}, gamma));
      const double g2 = gamma * gamma;
      CHECK(std::abs(f.gamma_plus -
                     g2 * std::abs(rho.corner_outer()) / kTwoPi) < 1e-10);
      CHECK(std::abs(f.gamma_minus -
                     g2 * std::abs(rho.corner_inner()) / kTwoPi) < 1e-10);
      CHECK(f.gamma_plus <= 1.0 / kTwoPi + 1e-10);
      CHECK(f.gamma_minus <= 1.0 / kTwoPi + 1e-10);
    }
  }
}

TEST_CASE("closed-form gauge on anchor states") {
  const qent::DensityMatrix phip =
      qent::density_from_pure(qent::bell_state(qent::BellKind::PhiPlus));
  CHECK(qent::gamma_closed_form(phip) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(qent::gamma_closed_form(rotated_bell_density()) < 1e-15);
  CHECK(qent::gamma_closed_form(qent::werner_state(0.5)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(qent::gamma_closed_form(qent::horodecki_state(0.6, 0.3)) ==
        doctest::Approx(0.384).epsilon(1e-14));
}

TEST_CASE("numeric gauge equals the closed form on every grid size") {
  for (int n : {4, 8, 16}) {
    const qent::PhaseGrid grid(n, n);
    for (int index = 0; index < 8; ++index) {
      const qent::DensityMatrix rho =
          qent::random_mixed(qent::derive_stream(qent::RngSeed{311}, index),
                             1 + index % 4);
      CHECK(std::abs(qent::gamma_numeric(rho, grid) -
                     qent::gamma_closed_form(rho)) < 1e-10);
    }
    CHECK(std::abs(qent::gamma_numeric(qent::werner_state(0.7), grid) -
                   qent::gamma_closed_form(qent::werner_state(0.7))) < 1e-10);
  }
}

TEST_CASE("product states have zero gauge") {
  qent::SplitMix64 rng(qent::RngSeed{312});
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Vector2cd v;
    v << Complex(rng.next_gaussian(), rng.next_gaussian()),
        Complex(rng.next_gaussian(), rng.next_gaussian());
    v.normalize();
    Eigen::Vector2cd w;
    w << Complex(rng.next_gaussian(), rng.next_gaussian()),
        Complex(rng.next_gaussian(), rng.next_gaussian());
    w.normalize();
    const Mat2 ra = v * v.adjoint();
    const Mat2 rb = w * w.adjoint();
    CHECK(qent::gamma_closed_form(qent::product_state(ra, rb)) < 1e-12);
  }
}

TEST_CASE("gauge range and the non-invariance witness pair") {
  for (int index = 0; index < 20; ++index) {
    const qent::DensityMatrix rho =
        qent::random_mixed(qent::derive_stream(qent::RngSeed{313}, index),
                           1 + index % 4);
    const double g = qent::gamma_closed_form(rho);
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
  // The same physical state in two local bases: gauge 1 against gauge 0.
  const qent::DensityMatrix bell =
      qent::density_from_pure(qent::bell_state(qent::BellKind::PhiPlus));
  CHECK(qent::gamma_closed_form(bell) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(qent::gamma_closed_form(rotated_bell_density()) < 1e-15);
}
