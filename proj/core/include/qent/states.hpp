#pragma once

#include <array>

#include "qent/qmath.hpp"
#include "qent/rng.hpp"

namespace qent {

/// The four maximally entangled basis states, in the fixed order used by
/// eigenvalue vectors and measurement records throughout the library:
/// Phi+ = (|00>+|11>)/sqrt2, Phi- = (|00>-|11>)/sqrt2,
/// Psi+ = (|01>+|10>)/sqrt2, Psi- = (|01>-|10>)/sqrt2.
enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

/// Normalized two-qubit state vector in the basis |00>, |01>, |10>, |11>.
/// Construction validates finiteness and unit norm.
class PureState {
 public:
  explicit PureState(const Vec4& amplitudes,
                     const Tolerances& tol = default_tolerances());

  const Vec4& amplitudes() const { return amps_; }
  Complex amplitude(int i) const { return amps_(i); }

 private:
  Vec4 amps_;
};

/// Validated two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite (within tolerances). Construction re-checks all three, so a
/// DensityMatrix value is a proof token that downstream code may rely on.
class DensityMatrix {
 public:
  explicit DensityMatrix(const Mat4& m,
                         const Tolerances& tol = default_tolerances());

  const Mat4& matrix() const { return m_; }

  /// The |00><11| coefficient (entry (1,4) in 1-based indexing).
  Complex corner_outer() const { return m_(0, 3); }
  /// The |01><10| coefficient (entry (2,3) in 1-based indexing).
  Complex corner_inner() const { return m_(1, 2); }

 private:
  Mat4 m_;
};

PureState bell_state(BellKind kind);

DensityMatrix density_from_pure(const PureState& psi);

/// Two-pure-state mixture p |v><v| + (1-p) |w><w| with
/// v = a|00> + sqrt(1-a^2)|11> and w = a|01> + sqrt(1-a^2)|10>.
/// Requires a, p in [0, 1].
DensityMatrix horodecki_state(double a, double p);

/// Mixture of the singlet (weight p) with the three remaining Bell
/// projectors at weight (1-p)/3 each. Requires p in [0, 1].
DensityMatrix werner_state(double p);

/// Bell-diagonal state with the given weights on (Phi+, Phi-, Psi+, Psi-).
/// Requires the weights to form a probability vector (within the simplex
/// tolerance). Assembled in closed form: diagonal
/// ((l1+l2)/2, (l3+l4)/2, (l3+l4)/2, (l1+l2)/2), outer corner (l1-l2)/2,
/// inner corner (l3-l4)/2.
DensityMatrix bell_diagonal_state(const std::array<double, 4>& lambdas);

/// Product state rho_A (x) rho_B. Each factor must itself be a valid qubit
/// density matrix (Hermitian, unit trace, PSD).
DensityMatrix product_state(const Mat2& rho_a, const Mat2& rho_b);

/// Haar-distributed pure state: four complex Gaussian amplitudes from the
/// seed's stream, normalized.
PureState haar_random_pure(RngSeed seed);

/// Random rank-`rank` mixture: `rank` independent Haar pure states combined
/// with flat-Dirichlet weights (normalized -log uniforms). Draw order, which
/// golden files depend on: all 8*rank Gaussian amplitude components first,
/// then `rank` weight uniforms. Requires rank in [1, 4].
DensityMatrix random_mixed(RngSeed seed, int rank);

}  // namespace qent
