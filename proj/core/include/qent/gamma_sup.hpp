#pragma once

#include <optional>

#include "qent/local_unitary.hpp"
#include "qent/phase_povm.hpp"
#include "qent/rng.hpp"
#include "qent/states.hpp"

namespace qent {

/// Knobs for the local-unitary maximization of the phase-asymmetry gauge.
struct OptimizerConfig {
  int restarts = 8;              ///< restart 0 is the identity, rest random
  int sweeps_max = 50;           ///< coordinate sweeps per restart
  int line_search_points = 32;   ///< coarse scan nodes per axis
  double refine_tolerance = 1e-9;    ///< golden-section interval width
  double convergence_delta = 1e-10;  ///< sweep improvement below => stop
  RngSeed seed{0};
};

struct GammaSupResult {
  double value = 0.0;
  LocalUnitaryParams best_params;
  int sweeps_used = 0;    ///< sweeps consumed by the winning restart
  int restarts_used = 0;
  bool converged = false;  ///< winning restart stopped on convergence_delta
  bool oracle_checked = false;
  std::optional<double> oracle_value;
  bool oracle_agrees = false;  ///< |value - oracle| within oracle bound
};

/// Gauge value after the parameterized local rotation:
/// gamma_closed_form(apply(build_from_params(params), rho)).
double gamma_at(const DensityMatrix& rho, const LocalUnitaryParams& params);

/// Deterministic multi-start coordinate ascent over the four angles. Each
/// sweep updates the angles in a fixed order (phi_mix, theta_mix, theta_a,
/// theta_b); each axis update does a coarse scan of line_search_points
/// equally spaced values over the axis range followed by golden-section
/// refinement around the best scan node down to refine_tolerance. Restart 0
/// starts from the identity, so the result never falls below the unrotated
/// gauge; restarts r >= 1 start from uniform draws on sub-stream r of
/// cfg.seed. Ties between restarts keep the lexicographically smaller
/// parameter vector.
GammaSupResult coordinate_ascent(const DensityMatrix& rho,
                                 const OptimizerConfig& cfg);

/// Exhaustive grid evaluation, the slow cross-check for the ascent.
///
/// With use_full_unitaries = false: the four-angle grid, mixing angles on
/// `resolution` + 1 closed nodes over [0, pi/2] and phases on `resolution`
/// half-open nodes over [0, 2 pi). Doubling the resolution therefore nests
/// both axes, so the grid maximum is monotone under doubling.
///
/// With use_full_unitaries = true: each side is decomposed as
/// diag(1, e^{i g}) * [[cos(b/2), sin(b/2)], [-sin(b/2), cos(b/2)]] *
/// diag(1, e^{i d}), covering all of U(2) up to overall phase; b/2 runs over
/// `resolution` + 1 closed nodes on [0, pi/2] and d over `resolution`
/// half-open nodes on [0, 2 pi). The leading diagonals diag(1, e^{i g}) commute
/// through to a corner-phase action, which leaves the gauge invariant, so
/// their axes are collapsed instead of enumerated; the returned maximum is
/// exactly the full six-angle grid maximum.
///
/// Requires resolution >= 8.
double brute_force_oracle(const DensityMatrix& rho, int resolution,
                          bool use_full_unitaries = false);

/// Accuracy bound for brute_force_oracle: the grid maximum is within
/// 4 * (pi / resolution)^2 of the true supremum. The gauge is smooth and
/// stationary at the supremum, so the error is quadratic in the largest
/// node spacing (pi / resolution on the phase axes after folding, twice the
/// mixing-axis spacing); the constant 4 bounds the curvature of a product of
/// two rotations acting on corner magnitudes bounded by 1/2.
double brute_force_oracle_bound(int resolution);

/// Coordinate ascent plus, when oracle_resolution is given, a brute-force
/// cross-check recorded in the result (oracle_checked / oracle_value /
/// oracle_agrees).
GammaSupResult gamma_sup(const DensityMatrix& rho, const OptimizerConfig& cfg,
                         std::optional<int> oracle_resolution = std::nullopt);

}  // namespace qent
