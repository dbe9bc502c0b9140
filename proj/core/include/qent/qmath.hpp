#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qent {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;

/// Shared numeric tolerances. All validation thresholds used across the
/// library live here so they can be audited (and, in tests, tightened) in
/// one place.
struct Tolerances {
  double hermiticity = 1e-10;  ///< max |m - m^dag| entry admitted
  double eigenvalue = 1e-10;   ///< eigenvalue accuracy / trace-sum check
  double trace = 1e-10;        ///< |tr(rho) - 1| admitted
  double psd = 1e-9;           ///< eigenvalues >= -psd still count as PSD
  double unitarity = 1e-10;    ///< max |U^dag U - I| entry admitted
  double state_norm = 1e-10;   ///< | ||psi|| - 1 | admitted
  double simplex = 1e-10;      ///< eigenvalue-simplex slack
  double density_floor = 1e-12;    ///< probability densities >= -density_floor
  double normalization = 1e-10;    ///< |integral - 1| admitted for densities
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

/// Standard matrix product. Shape agreement is enforced by the fixed-size
/// types.
template <typename M>
M matmul(const M& a, const M& b) {
  return a * b;
}

/// Conjugate transpose.
template <typename M>
M dagger(const M& m) {
  return m.adjoint();
}

/// Kronecker product in the basis ordering |00>, |01>, |10>, |11> (first
/// factor indexes the slow axis). All two-qubit conventions in the library
/// derive from this ordering: the (1,4) and (2,3) entries of a density
/// matrix, 1-based, are the |00><11| and |01><10| coefficients.
Mat4 kron(const Mat2& a, const Mat2& b);

/// Kronecker product of two 2-vectors, same ordering.
Vec4 kron(const Vec2& a, const Vec2& b);

/// Max entrywise deviation from Hermiticity.
double hermiticity_deviation(const Mat4& m);
double hermiticity_deviation(const Mat2& m);

/// Eigenvalues of a Hermitian 4x4 matrix, sorted descending. Input must be
/// Hermitian within tol.hermiticity; throws std::invalid_argument otherwise.
/// The sum matches the trace to tol.eigenvalue.
std::array<double, 4> hermitian_eigenvalues(
    const Mat4& m, const Tolerances& tol = default_tolerances());

}  // namespace qent
