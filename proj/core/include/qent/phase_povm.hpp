#pragma once

#include <vector>

#include "qent/qmath.hpp"
#include "qent/states.hpp"

namespace qent {

/// Uniform grid over the two joint-phase axes. Node i on the plus axis sits
/// at 2*pi*i / n_plus (half-open, endpoint excluded); likewise on the minus
/// axis. At least 4 nodes per axis.
struct PhaseGrid {
  PhaseGrid() : PhaseGrid(16, 16) {}
  PhaseGrid(int n_plus_nodes, int n_minus_nodes);

  double node_plus(int i) const;
  double node_minus(int j) const;

  int n_plus;
  int n_minus;
};

/// Joint probability density over the two phase variables, tabulated on a
/// PhaseGrid. values is row-major: values[i * grid.n_minus + j] is the
/// density at (node_plus(i), node_minus(j)). Densities are nonnegative
/// (within -1e-12) and integrate to 1 over [0,2pi)^2 under the periodic
/// trapezoid rule.
struct JointPhaseDistribution {
  PhaseGrid grid;
  double gamma_param = 1.0;
  std::vector<double> values;

  double value(int i, int j) const { return values[i * grid.n_minus + j]; }
};

/// First Fourier moduli of the joint distribution along each axis, averaged
/// over the other axis. Each component is bounded by 1/(2*pi).
struct FourierPair {
  double gamma_plus = 0.0;
  double gamma_minus = 0.0;
};

/// One-qubit phase measurement element at phase phi and sharpness
/// gamma_param in [0, 1]:
///   (1 / 2 pi) * [[1, gamma e^{-i phi}], [gamma e^{i phi}, 1]].
/// PSD with eigenvalues (1 +- gamma)/(2 pi); integrates to the identity over
/// a full phase cycle.
Mat2 single_qubit_povm_element(double phi, double gamma_param);

/// Symmetrized two-qubit element in the rotated coordinates
/// (phi_plus, phi_minus): the average of the product elements at local
/// phases ((u, v)) and ((u + pi, v + pi)) with u = (phi_plus + phi_minus)/2,
/// v = (phi_plus - phi_minus)/2. The averaging cancels all single-qubit
/// coherences, leaving
///   (1/4pi^2) [ I + gamma^2 (e^{i phi_plus} S+S+ + e^{i phi_minus} S+S- + h.c.) ].
/// Trace is 1/pi^2.
Mat4 joint_povm_element(double phi_plus, double phi_minus, double gamma_param);

/// Tabulates p(phi_plus, phi_minus) = tr[rho * joint_povm_element(...)] on
/// the grid and validates nonnegativity and trapezoid normalization.
JointPhaseDistribution joint_phase_distribution(const DensityMatrix& rho,
                                                const PhaseGrid& grid,
                                                double gamma_param);

/// First Fourier moduli of the tabulated distribution: the plus component is
/// |trapezoid of e^{i phi_plus} p| averaged over the minus axis, and vice
/// versa. For an exact distribution these equal gamma^2 |rho(1,4)| / (2 pi)
/// and gamma^2 |rho(2,3)| / (2 pi).
FourierPair fourier_components(const JointPhaseDistribution& dist);

/// Phase-asymmetry gauge computed through the measurement pipeline at
/// gamma_param = 1: 4 pi |gamma_plus - gamma_minus|. Always in [0, 1].
double gamma_numeric(const DensityMatrix& rho, const PhaseGrid& grid);

/// Closed form of the same gauge: 2 * | |rho(1,4)| - |rho(2,3)| |, with the
/// entries read in 1-based indexing from the computational-basis matrix.
double gamma_closed_form(const DensityMatrix& rho);

}  // namespace qent
