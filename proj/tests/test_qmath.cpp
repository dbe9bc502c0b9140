#include "qent/qmath.hpp"

#include <doctest.h>

#include <cmath>

#include "qent/local_unitary.hpp"
#include "qent/rng.hpp"
#include "qent/states.hpp"

namespace {

using qent::Complex;
using qent::Mat2;
using qent::Mat4;
using qent::Vec2;

Mat2 random_mat2(qent::SplitMix64& rng) {
  Mat2 m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  return m;
}

}  // namespace

TEST_CASE("kron uses the |00>,|01>,|10>,|11> ordering") {
  Mat2 a;
  a << Complex(1.0), Complex(2.0), Complex(3.0), Complex(4.0);
  Mat2 b;
  b << Complex(10.0), Complex(20.0), Complex(30.0), Complex(40.0);
  const Mat4 k = qent::kron(a, b);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          CHECK(k(2 * i + r, 2 * j + c) == a(i, j) * b(r, c));
        }
      }
    }
  }
}

TEST_CASE("kron places |11><00| at row 4, column 1") {
  Mat2 lower;
  lower << Complex(0.0), Complex(0.0), Complex(1.0), Complex(0.0);
  const Mat4 k = qent::kron(lower, lower);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex expected = (i == 3 && j == 0) ? Complex(1.0) : Complex(0.0);
      CHECK(k(i, j) == expected);
    }
  }
}

TEST_CASE("kron of corner-phase diagonals") {
  const double ta = 0.7;
  const double tb = 2.1;
  Mat2 da = Mat2::Identity();
  da(1, 1) = std::polar(1.0, ta);
  Mat2 db = Mat2::Identity();
  db(1, 1) = std::polar(1.0, tb);
  const Mat4 k = qent::kron(da, db);
  CHECK(std::abs(k(0, 0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(k(1, 1) - std::polar(1.0, tb)) < 1e-15);
  CHECK(std::abs(k(2, 2) - std::polar(1.0, ta)) < 1e-15);
  CHECK(std::abs(k(3, 3) - std::polar(1.0, ta + tb)) < 1e-15);
}

TEST_CASE("sigma_x tensor identity squares to the identity") {
  Mat2 sx;
  sx << Complex(0.0), Complex(1.0), Complex(1.0), Complex(0.0);
  const Mat4 op = qent::kron(sx, Mat2::Identity());
  const Mat4 sq = qent::matmul(op, op);
  CHECK((sq - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("kron is bilinear") {
  qent::SplitMix64 rng(qent::RngSeed{101});
  for (int trial = 0; trial < 20; ++trial) {
    const Mat2 a = random_mat2(rng);
    const Mat2 b = random_mat2(rng);
    const Mat2 c = random_mat2(rng);
    const Complex x(rng.next_gaussian(), rng.next_gaussian());
    const Complex y(rng.next_gaussian(), rng.next_gaussian());
    const Mat4 lhs = qent::kron(Mat2(x * a + y * b), c);
    const Mat4 rhs = x * qent::kron(a, c) + y * qent::kron(b, c);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("trace of kron factorizes") {
  qent::SplitMix64 rng(qent::RngSeed{102});
  for (int trial = 0; trial < 20; ++trial) {
    const Mat2 a = random_mat2(rng);
    const Mat2 b = random_mat2(rng);
    const Complex lhs = qent::kron(a, b).trace();
    const Complex rhs = a.trace() * b.trace();
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("dagger is an antihomomorphism and involution") {
  qent::SplitMix64 rng(qent::RngSeed{103});
  Mat4 a;
  Mat4 b;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      a(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
      b(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  CHECK((qent::dagger(qent::dagger(a)) - a).cwiseAbs().maxCoeff() == 0.0);
  const Mat4 lhs = qent::dagger(qent::matmul(a, b));
  const Mat4 rhs = qent::matmul(qent::dagger(b), qent::dagger(a));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

  Mat2 upper;
  upper << Complex(0.0), Complex(0.0, 1.0), Complex(0.0), Complex(0.0);
  const Mat2 d = qent::dagger(upper);
  CHECK(d(0, 0) == Complex(0.0));
  CHECK(d(0, 1) == Complex(0.0));
  CHECK(d(1, 0) == Complex(0.0, -1.0));
  CHECK(d(1, 1) == Complex(0.0));
}

TEST_CASE("hermitian_eigenvalues on known spectra") {
  const auto flat = qent::hermitian_eigenvalues(Mat4::Identity() * 0.25);
  for (double v : flat) {
    CHECK(v == doctest::Approx(0.25).epsilon(1e-12));
  }

  const qent::DensityMatrix bell =
      qent::density_from_pure(qent::bell_state(qent::BellKind::PhiPlus));
  const auto rank1 = qent::hermitian_eigenvalues(bell.matrix());
  CHECK(rank1[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) {
    CHECK(std::abs(rank1[i]) < 1e-10);
  }

  const auto werner = qent::hermitian_eigenvalues(qent::werner_state(0.5).matrix());
  CHECK(werner[0] == doctest::Approx(0.5).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) {
    CHECK(werner[i] == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  }
}

TEST_CASE("hermitian_eigenvalues recovers a conjugated diagonal") {
  const qent::FullLocalUnitary u = qent::haar_local_unitary(qent::RngSeed{17});
  const Mat4 big = qent::kron(u.u_a(), u.u_b());
  Mat4 diag = Mat4::Zero();
  diag(0, 0) = 0.4;
  diag(1, 1) = 0.3;
  diag(2, 2) = 0.2;
  diag(3, 3) = 0.1;
  const Mat4 m = big * diag * qent::dagger(big);
  const auto eigs = qent::hermitian_eigenvalues(m);
  CHECK(eigs[0] == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(eigs[1] == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(eigs[2] == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(eigs[3] == doctest::Approx(0.1).epsilon(1e-9));
  const double sum = eigs[0] + eigs[1] + eigs[2] + eigs[3];
  CHECK(std::abs(sum - m.trace().real()) < 1e-10);
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
  Mat4 m = Mat4::Identity() * 0.25;
  m(0, 1) = Complex(0.1, 0.0);
  CHECK_THROWS_AS((void)qent::hermitian_eigenvalues(m), std::invalid_argument);
}

TEST_CASE("hermiticity_deviation measures the defect") {
  CHECK(qent::hermiticity_deviation(Mat4(Mat4::Identity())) == 0.0);
  Mat4 m = Mat4::Zero();
  m(0, 1) = Complex(0.0, 0.5);
  m(1, 0) = Complex(0.0, 0.5);
  CHECK(qent::hermiticity_deviation(m) == doctest::Approx(1.0).epsilon(1e-12));

  Mat2 h;
  h << Complex(1.0), Complex(0.25, -0.5), Complex(0.25, 0.5), Complex(-2.0);
  CHECK(qent::hermiticity_deviation(h) == 0.0);
}
