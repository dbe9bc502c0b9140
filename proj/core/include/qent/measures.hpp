#pragma once

#include "qent/gamma_sup.hpp"
#include "qent/states.hpp"

namespace qent {

/// All reference quantities for one state, as emitted by the CLI.
struct MeasureReport {
  double gamma = 0.0;        ///< unrotated phase-asymmetry gauge
  double gamma_sup = 0.0;    ///< local-unitary supremum of the gauge
  double concurrence = 0.0;
  double negativity = 0.0;
  bool is_ppt = false;
};

/// Concurrence of a pure two-qubit state: 2 |a1 a4 - a2 a3| in the
/// computational basis.
double concurrence_pure(const PureState& psi);

/// Wootters concurrence of a mixed state, computed from the Hermitian form
/// sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho); its eigenvalue square roots
/// in decreasing order give C = max(0, m1 - m2 - m3 - m4).
double concurrence_mixed(const DensityMatrix& rho);

/// Transpose of the second-qubit indices: each 2x2 sub-block of the 4x4
/// matrix (in the row-major two-qubit basis) is transposed in place. The
/// result is Hermitian but in general not positive.
Mat4 partial_transpose(const DensityMatrix& rho);

/// True when the partial transpose has no eigenvalue below the PSD floor.
/// For two qubits this is exactly separability.
bool is_ppt(const DensityMatrix& rho);

/// Absolute sum of the negative eigenvalues of the partial transpose.
double negativity(const DensityMatrix& rho);

/// Bundles the gauge (plain and supremum), concurrence, negativity and the
/// PPT flag for one state, running the supremum optimizer with `cfg`.
MeasureReport measure_report(const DensityMatrix& rho,
                             const OptimizerConfig& cfg);

}  // namespace qent
