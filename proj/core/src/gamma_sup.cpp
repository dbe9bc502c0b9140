#include "qent/gamma_sup.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ascent_engine.hpp"

namespace qent {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The gauge only needs four entries of the rotated matrix, so hot paths
// work with the rows of the one-qubit factors instead of conjugating the
// full 4x4 matrix.
struct RowPair {
  Vec2 r1;
  Vec2 r2;
};

RowPair mixer_rows(double mix, double phase) {
  const double c = std::cos(mix);
  const double s = std::sin(mix);
  const Complex e(std::cos(phase), std::sin(phase));
  RowPair rows;
  rows.r1 << Complex(c, 0.0), e * s;
  rows.r2 << -std::conj(e) * s, Complex(c, 0.0);
  return rows;
}

// Rows of Rot(mix) * diag(1, e^{i phase}), the per-side factor of the
// full-unitary grid after the gauge-invariant leading diagonal is dropped.
RowPair folded_rows(double mix, double phase) {
  const double c = std::cos(mix);
  const double s = std::sin(mix);
  const Complex e(std::cos(phase), std::sin(phase));
  RowPair rows;
  rows.r1 << Complex(c, 0.0), e * s;
  rows.r2 << Complex(-s, 0.0), e * c;
  return rows;
}

double gauge_from_rows(const Mat4& rho, const RowPair& a, const RowPair& b) {
  const Vec4 row1 = kron(a.r1, b.r1);
  const Vec4 row2 = kron(a.r1, b.r2);
  const Vec4 row3 = kron(a.r2, b.r1);
  const Vec4 row4 = kron(a.r2, b.r2);
  const Vec4 via4 = rho * row4.conjugate();
  const Vec4 via3 = rho * row3.conjugate();
  const Complex c14 = row1.cwiseProduct(via4).sum();
  const Complex c23 = row2.cwiseProduct(via3).sum();
  return 2.0 * std::abs(std::abs(c14) - std::abs(c23));
}

double gauge_at_params(const Mat4& rho, const LocalUnitaryParams& p) {
  return gauge_from_rows(rho, mixer_rows(p.phi_mix, p.theta_a),
                         mixer_rows(p.theta_mix, p.theta_b));
}

// The ascent refines past the oracle's grid spacing, so the agreement flag
// never demands better than this floor even at high grid resolutions.
constexpr double kOracleAgreementFloor = 2e-3;

}  // namespace

double gamma_at(const DensityMatrix& rho, const LocalUnitaryParams& params) {
  return gamma_closed_form(apply(build_from_params(params), rho));
}

GammaSupResult coordinate_ascent(const DensityMatrix& rho,
                                 const OptimizerConfig& cfg) {
  const Mat4 m = rho.matrix();
  const auto objective = [&m](const LocalUnitaryParams& p) {
    return gauge_at_params(m, p);
  };
  const detail::AscentOutcome out = detail::run_coordinate_ascent(objective, cfg);
  GammaSupResult result;
  result.value = out.value;
  result.best_params = out.params;
  result.sweeps_used = out.sweeps_used;
  result.restarts_used = cfg.restarts;
  result.converged = out.converged;
  return result;
}

double brute_force_oracle(const DensityMatrix& rho, int resolution,
                          bool use_full_unitaries) {
  if (resolution < 8) {
    throw std::invalid_argument("brute_force_oracle: resolution " +
                                std::to_string(resolution) +
                                " below the minimum of 8");
  }
  const Mat4 m = rho.matrix();
  // Mixing angle on resolution+1 closed nodes over [0, pi/2] and phase on
  // resolution half-open nodes over [0, 2 pi): doubling the resolution
  // refines both grids in place, so the grid maximum is monotone under
  // doubling.
  std::vector<RowPair> table;
  table.reserve(static_cast<std::size_t>(resolution + 1) * resolution);
  for (int i = 0; i <= resolution; ++i) {
    const double mix = kHalfPi * i / resolution;
    for (int k = 0; k < resolution; ++k) {
      const double phase = kTwoPi * k / resolution;
      table.push_back(use_full_unitaries ? folded_rows(mix, phase)
                                         : mixer_rows(mix, phase));
    }
  }
  double best = 0.0;
  for (const RowPair& a : table) {
    for (const RowPair& b : table) {
      const double v = gauge_from_rows(m, a, b);
      if (v > best) {
        best = v;
      }
    }
  }
  return best;
}

double brute_force_oracle_bound(int resolution) {
  if (resolution < 8) {
    throw std::invalid_argument("brute_force_oracle_bound: resolution " +
                                std::to_string(resolution) +
                                " below the minimum of 8");
  }
  const double h = std::numbers::pi / resolution;
  return 4.0 * h * h;
}

GammaSupResult gamma_sup(const DensityMatrix& rho, const OptimizerConfig& cfg,
                         std::optional<int> oracle_resolution) {
  GammaSupResult result = coordinate_ascent(rho, cfg);
  if (oracle_resolution.has_value()) {
    const double oracle = brute_force_oracle(rho, *oracle_resolution, false);
    result.oracle_checked = true;
    result.oracle_value = oracle;
    const double agreement = std::max(
        kOracleAgreementFloor, brute_force_oracle_bound(*oracle_resolution));
    result.oracle_agrees = std::abs(result.value - oracle) <= agreement;
  }
  return result;
}

}  // namespace qent
