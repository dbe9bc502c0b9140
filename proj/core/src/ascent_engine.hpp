// Shared deterministic coordinate-ascent engine over the four local-rotation
// angles. gamma_sup.cpp drives it with the exact gauge objective and
// bell_analyzer.cpp with the measurement-protocol estimate, so the two
// maximizations stay structurally identical and comparable.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include "qent/gamma_sup.hpp"
#include "qent/rng.hpp"

namespace qent::detail {

struct AscentOutcome {
  double value = 0.0;
  LocalUnitaryParams params;
  int sweeps_used = 0;
  bool converged = false;
  std::int64_t evaluations = 0;
};

inline double wrap_phase(double t) {
  const double two_pi = 2.0 * std::numbers::pi;
  double w = t - two_pi * std::floor(t / two_pi);
  if (!(w >= 0.0) || w >= two_pi) {
    w = 0.0;
  }
  return w;
}

inline bool params_less(const LocalUnitaryParams& x,
                        const LocalUnitaryParams& y) {
  if (x.phi_mix != y.phi_mix) return x.phi_mix < y.phi_mix;
  if (x.theta_mix != y.theta_mix) return x.theta_mix < y.theta_mix;
  if (x.theta_a != y.theta_a) return x.theta_a < y.theta_a;
  return x.theta_b < y.theta_b;
}

struct AscentAxis {
  double LocalUnitaryParams::* field;
  double hi;
  bool periodic;
};

inline const AscentAxis kAscentAxes[4] = {
    {&LocalUnitaryParams::phi_mix, std::numbers::pi / 2.0, false},
    {&LocalUnitaryParams::theta_mix, std::numbers::pi / 2.0, false},
    {&LocalUnitaryParams::theta_a, 2.0 * std::numbers::pi, true},
    {&LocalUnitaryParams::theta_b, 2.0 * std::numbers::pi, true},
};

inline void validate_optimizer_config(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) {
    throw std::invalid_argument("OptimizerConfig: restarts must be >= 1");
  }
  if (cfg.sweeps_max < 1) {
    throw std::invalid_argument("OptimizerConfig: sweeps_max must be >= 1");
  }
  if (cfg.line_search_points < 4) {
    throw std::invalid_argument(
        "OptimizerConfig: line_search_points must be >= 4");
  }
  if (!(cfg.refine_tolerance > 0.0)) {
    throw std::invalid_argument(
        "OptimizerConfig: refine_tolerance must be positive");
  }
  if (!(cfg.convergence_delta >= 0.0)) {
    throw std::invalid_argument(
        "OptimizerConfig: convergence_delta must be nonnegative");
  }
}

/// Multi-start coordinate ascent of `objective` (a callable taking
/// LocalUnitaryParams with all angles already inside their ranges). Restart 0
/// starts at the identity (all angles zero); restart r >= 1 draws uniform
/// starting angles from sub-stream r of cfg.seed. Each sweep updates the
/// four axes in declaration order with a coarse scan followed by
/// golden-section refinement; the scan keeps the incumbent value, so the
/// trajectory is monotone. Exact value ties across restarts resolve to the
/// lexicographically smaller parameter vector.
template <typename F>
AscentOutcome run_coordinate_ascent(F&& objective, const OptimizerConfig& cfg) {
  validate_optimizer_config(cfg);

  AscentOutcome best;
  bool have_best = false;
  std::int64_t evaluations = 0;

  const auto canonical = [](const AscentAxis& axis, double t) {
    return axis.periodic ? wrap_phase(t) : std::clamp(t, 0.0, axis.hi);
  };

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    LocalUnitaryParams params;
    if (restart > 0) {
      SplitMix64 rng(
          derive_stream(cfg.seed, static_cast<std::uint64_t>(restart)));
      params.phi_mix = rng.next_double() * kAscentAxes[0].hi;
      params.theta_mix = rng.next_double() * kAscentAxes[1].hi;
      params.theta_a = rng.next_double() * kAscentAxes[2].hi;
      params.theta_b = rng.next_double() * kAscentAxes[3].hi;
    }
    double value = objective(params);
    ++evaluations;

    int sweeps = 0;
    bool converged = false;
    while (sweeps < cfg.sweeps_max) {
      ++sweeps;
      const double sweep_start = value;
      for (const AscentAxis& axis : kAscentAxes) {
        const auto eval_at = [&](double t) {
          LocalUnitaryParams trial = params;
          trial.*(axis.field) = canonical(axis, t);
          ++evaluations;
          return objective(trial);
        };

        double best_t = params.*(axis.field);
        double best_v = value;
        const int n = cfg.line_search_points;
        const double spacing = axis.periodic ? axis.hi / n : axis.hi / (n - 1);
        for (int k = 0; k < n; ++k) {
          const double t =
              axis.periodic ? axis.hi * k / n : axis.hi * k / (n - 1);
          const double v = eval_at(t);
          if (v > best_v) {
            best_v = v;
            best_t = t;
          }
        }

        double lo = best_t - spacing;
        double hi = best_t + spacing;
        if (!axis.periodic) {
          lo = std::max(lo, 0.0);
          hi = std::min(hi, axis.hi);
        }
        constexpr double kInvGolden = 0.6180339887498949;
        double c = hi - kInvGolden * (hi - lo);
        double d = lo + kInvGolden * (hi - lo);
        double fc = eval_at(c);
        double fd = eval_at(d);
        const auto consider = [&](double t, double v) {
          if (v > best_v) {
            best_v = v;
            best_t = t;
          }
        };
        consider(c, fc);
        consider(d, fd);
        while (hi - lo > cfg.refine_tolerance) {
          if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvGolden * (hi - lo);
            fc = eval_at(c);
            consider(c, fc);
          } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvGolden * (hi - lo);
            fd = eval_at(d);
            consider(d, fd);
          }
        }

        params.*(axis.field) = canonical(axis, best_t);
        value = best_v;
      }
      if (value - sweep_start < cfg.convergence_delta) {
        converged = true;
        break;
      }
    }

    const bool better = !have_best || value > best.value ||
                        (value == best.value && params_less(params, best.params));
    if (better) {
      best.value = value;
      best.params = params;
      best.sweeps_used = sweeps;
      best.converged = converged;
      have_best = true;
    }
  }

  best.evaluations = evaluations;
  return best;
}

}  // namespace qent::detail
