#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "qent/gamma_sup.hpp"
#include "qent/local_unitary.hpp"
#include "qent/rng.hpp"
#include "qent/states.hpp"

namespace qent {

/// Born probabilities of the four maximally entangled analyzer outcomes, in
/// the BellKind order. They sum to 1 within 1e-10.
struct BellProbabilities {
  double p_phi_plus = 0.0;
  double p_phi_minus = 0.0;
  double p_psi_plus = 0.0;
  double p_psi_minus = 0.0;
};

/// Outcome counts of a finite measurement run; counts sum to shots.
struct ShotRecord {
  std::int64_t n_phi_plus = 0;
  std::int64_t n_phi_minus = 0;
  std::int64_t n_psi_plus = 0;
  std::int64_t n_psi_minus = 0;
  std::int64_t shots = 0;
};

/// The two analyzer probability differences:
/// d1 = p_phi_plus - p_phi_minus = 2 Re rho(1,4),
/// d2 = p_psi_plus - p_psi_minus = 2 Re rho(2,3).
struct CornerDifferences {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Sign choice for the combined visibility readout.
enum class VisibilitySigns { PlusPlus, PlusMinus };

/// Corner moduli recovered through phase-swept probability differences.
struct AbsCorners {
  double abs14 = 0.0;
  double abs23 = 0.0;
};

/// Outcome of the measurement-only protocol.
struct ProtocolResult {
  double gamma_sup_estimate = 0.0;
  int settings_evaluated = 0;              ///< analyzer settings tried
  std::int64_t inner_phase_settings = 0;   ///< phase readouts consumed
  double shot_noise_sigma = 0.0;  ///< standard error of the final readout
  LocalUnitaryParams best_params;
};

/// Per-setting trace entry streamed to the observer during the protocol:
/// the setting's angles, the verification readout at that setting's optimal
/// phases (zero counts in noiseless runs), and the setting's estimate.
struct ProtocolSettingRecord {
  int setting_index = 0;
  LocalUnitaryParams params;
  ShotRecord counts;
  double estimate = 0.0;
};

using ProtocolObserver = std::function<void(const ProtocolSettingRecord&)>;

BellProbabilities bell_probabilities(const DensityMatrix& rho);

/// Probability differences d1, d2 computed through bell_probabilities.
CornerDifferences corner_differences(const DensityMatrix& rho);

/// d1 + d2 (PlusPlus) or d1 - d2 (PlusMinus). Maximizing this raw combined
/// readout over local unitaries is NOT the gauge supremum: product states
/// like |+,+> reach visibility 1 at gauge 0. Kept as the counterexample.
double visibility(const DensityMatrix& rho, VisibilitySigns signs);

/// Recovers (|rho(1,4)|, |rho(2,3)|) using only probability differences:
/// d1 is swept over the summed corner phase and d2 over the differenced one
/// (phase_grid nodes plus golden-section refinement), and the maxima are
/// halved. phase_grid must be at least 8. Noiseless accuracy is 1e-9.
AbsCorners measured_abs_corners(const DensityMatrix& rho, int phase_grid);

/// The measurement-only estimate of the gauge supremum: coordinate ascent
/// over analyzer settings (LocalUnitaryParams) whose objective is
/// 2 * |abs14 - abs23| with both moduli recovered by phase-swept probability
/// differences. With `shots` given (at least 1000), every phase readout
/// draws a multinomial sample of that size from a per-setting stream
/// (sub-stream setting_index of a sampling root derived from `seed`, one
/// hop away so it never collides with the optimizer's restart streams);
/// without it, readouts are exact. The reported estimate comes from
/// one fresh evaluation at the winning setting, read out at the phases that
/// make both corners real and positive simultaneously, so it is free of the
/// maximization's selection bias; shot_noise_sigma is that readout's
/// standard error sqrt((1 - estimate^2) / shots).
ProtocolResult protocol_gamma_sup(const DensityMatrix& rho,
                                  const OptimizerConfig& cfg,
                                  std::optional<std::int64_t> shots,
                                  RngSeed seed,
                                  const ProtocolObserver& observer = {});

/// Multinomial draw of `shots` analyzer outcomes (shots >= 1), deterministic
/// per seed: each shot consumes one uniform and walks the cumulative
/// probabilities in BellKind order.
ShotRecord sample_bell_outcomes(const DensityMatrix& rho, std::int64_t shots,
                                RngSeed seed);

}  // namespace qent
