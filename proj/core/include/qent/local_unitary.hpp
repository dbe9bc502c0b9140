#pragma once

#include "qent/qmath.hpp"
#include "qent/rng.hpp"
#include "qent/states.hpp"

namespace qent {

/// Four-angle parameterization of a local unitary pair, sufficient for the
/// phase-asymmetry gauge: overall phases of each one-qubit unitary leave the
/// gauge invariant, so each factor is taken as
///   U(mix, phase) = [[cos(mix),              e^{i phase} sin(mix)],
///                    [-e^{-i phase} sin(mix), cos(mix)]].
/// Side A uses (phi_mix, theta_a); side B uses (theta_mix, theta_b). Mixing
/// angles live in [0, pi/2], phases in [0, 2 pi).
struct LocalUnitaryParams {
  double phi_mix = 0.0;
  double theta_mix = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
};

/// Pure corner-phase action: qubit A picks up diag(1, e^{i theta_a}), qubit
/// B picks up diag(1, e^{i theta_b}).
struct PhaseOnlyParams {
  double theta_a = 0.0;
  double theta_b = 0.0;
};

/// Pair of arbitrary one-qubit unitaries acting as U_A (x) U_B. Construction
/// validates unitarity of both factors.
class FullLocalUnitary {
 public:
  FullLocalUnitary(const Mat2& u_a, const Mat2& u_b,
                   const Tolerances& tol = default_tolerances());

  const Mat2& u_a() const { return u_a_; }
  const Mat2& u_b() const { return u_b_; }

 private:
  Mat2 u_a_;
  Mat2 u_b_;
};

/// Builds the unitary pair for the four-angle parameterization above.
/// Throws if a parameter is outside its range.
FullLocalUnitary build_from_params(const LocalUnitaryParams& params);

/// rho -> (U_A (x) U_B) rho (U_A (x) U_B)^dag. Output is re-validated.
DensityMatrix apply(const FullLocalUnitary& u, const DensityMatrix& rho);

/// Corner-phase action without matrix conjugation: multiplies the (1,4)
/// entry by e^{-i (theta_a + theta_b)} and the (2,3) entry by
/// e^{i (theta_b - theta_a)} (1-based indexing), conjugate entries
/// accordingly. Equals apply() with diagonal factors; leaves the
/// phase-asymmetry gauge invariant.
DensityMatrix apply_phase_only(const PhaseOnlyParams& params,
                               const DensityMatrix& rho);

/// Haar-distributed pair of one-qubit unitaries: complex Gaussian matrices,
/// Gram-Schmidt orthonormalized, column phases fixed so the R factor of the
/// implicit QR decomposition has a positive real diagonal.
FullLocalUnitary haar_local_unitary(RngSeed seed);

}  // namespace qent
