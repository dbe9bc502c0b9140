#include "validate_suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <qent/bell_analyzer.hpp>
#include <qent/gamma_sup.hpp>
#include <qent/local_unitary.hpp>
#include <qent/measures.hpp>
#include <qent/phase_povm.hpp>
#include <qent/qmath.hpp>
#include <qent/rng.hpp>
#include <qent/states.hpp>

namespace qtool {
namespace {

using qent::BellKind;
using qent::Complex;
using qent::DensityMatrix;
using qent::FullLocalUnitary;
using qent::LocalUnitaryParams;
using qent::Mat2;
using qent::Mat4;
using qent::OptimizerConfig;
using qent::PhaseGrid;
using qent::PureState;
using qent::RngSeed;
using qent::SplitMix64;
using qent::Vec4;

constexpr double kPi = 3.14159265358979323846;

// Per-check sub-stream tags, fixed so a check's draws do not depend on which
// other checks ran before it.
enum StreamTag : std::uint64_t {
  kTagKron = 1,
  kTagTrace,
  kTagDagger,
  kTagEigen,
  kTagSimplex,
  kTagGenerators,
  kTagDistribution,
  kTagFourier,
  kTagProduct,
  kTagPureConsistency,
  kTagCornerPhase,
  kTagSpectrum,
  kTagDominates,
  kTagInvariant,
  kTagPureEquals,
  kTagRestarts,
  kTagRange,
  kTagPpt,
  kTagPureConc,
  kTagMeasureLu,
  kTagSideFree,
  kTagProbabilities,
  kTagCorners,
  kTagMeasuredCorners,
  kTagProtocol,
  kTagEstimator,
  kTagSampling,
  kTagOracleAgree,
  kTagOracleDouble,
  kTagOracleCollapse,
};

struct Checker {
  ValidateLevel level;
  RngSeed root;
  std::ostream& out;
  int failures = 0;
  int total = 0;

  int count(int full, int quick) const {
    return level == ValidateLevel::Quick ? quick : full;
  }

  RngSeed stream(StreamTag tag, std::uint64_t index = 0) const {
    return qent::derive_stream(qent::derive_stream(root, tag), index);
  }

  void run(const std::string& name, int samples,
           const std::function<std::optional<std::string>()>& body) {
    ++total;
    std::optional<std::string> failure;
    try {
      failure = body();
    } catch (const std::exception& e) {
      failure = std::string("unexpected exception: ") + e.what();
    }
    if (failure.has_value()) {
      ++failures;
      out << "[FAIL] " << name << ": " << *failure << "\n";
    } else {
      out << "[PASS] " << name << " (" << samples << " samples)\n";
    }
  }
};

std::string describe(const std::string& what, double got, double limit) {
  std::ostringstream ss;
  ss << what << " = " << got << " exceeds " << limit;
  return ss.str();
}

Mat2 random_mat2(SplitMix64& rng) {
  Mat2 m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      m(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  return m;
}

Mat2 random_density2(SplitMix64& rng) {
  const Mat2 g = random_mat2(rng);
  Mat2 m = g * g.adjoint();
  m /= m.trace().real();
  return m;
}

DensityMatrix random_state(const Checker& c, StreamTag tag, int index) {
  return qent::random_mixed(c.stream(tag, static_cast<std::uint64_t>(index)),
                            1 + index % 4);
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// The Hadamard-rotated Bell state (1, 1, 1, -1)/2: equal corner moduli, so
// its raw gauge vanishes even though it is maximally entangled.
DensityMatrix rotated_bell_density() {
  Vec4 amps;
  amps << 0.5, 0.5, 0.5, -0.5;
  return qent::density_from_pure(PureState(amps));
}

std::vector<DensityMatrix> two_pure_mixture_grid(bool quick) {
  std::vector<DensityMatrix> states;
  const int a_step = quick ? 3 : 1;
  const int p_step = quick ? 5 : 1;
  for (int i = 1; i <= 9; i += a_step) {
    for (int j = 0; j <= 10; j += p_step) {
      states.push_back(qent::horodecki_state(0.1 * i, 0.1 * j));
    }
  }
  return states;
}

std::vector<DensityMatrix> werner_grid(bool quick) {
  std::vector<DensityMatrix> states;
  const int step = quick ? 4 : 1;
  for (int i = 0; i <= 20; i += step) {
    states.push_back(qent::werner_state(0.05 * i));
  }
  return states;
}

std::vector<DensityMatrix> bell_diagonal_points(const Checker& c, bool quick) {
  std::vector<DensityMatrix> states;
  const int n = quick ? 6 : 20;
  constexpr std::array<std::array<int, 2>, 6> kSlotPairs{
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  for (int i = 0; i < n; ++i) {
    SplitMix64 rng(c.stream(kTagProtocol, 1000 + static_cast<std::uint64_t>(i)));
    const double lambda = rng.next_double();
    const auto& pair = kSlotPairs[static_cast<std::size_t>(i % 6)];
    std::array<double, 4> lambdas{0.0, 0.0, 0.0, 0.0};
    lambdas[static_cast<std::size_t>(pair[0])] = lambda;
    lambdas[static_cast<std::size_t>(pair[1])] = 1.0 - lambda;
    states.push_back(qent::bell_diagonal_state(lambdas));
  }
  return states;
}

void add_qmath_checks(Checker& c) {
  c.run("qmath/kron-bilinear", c.count(50, 10), [&]() -> std::optional<std::string> {
    SplitMix64 rng(c.stream(kTagKron));
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const Mat2 a = random_mat2(rng);
      const Mat2 b = random_mat2(rng);
      const Mat2 d = random_mat2(rng);
      const Complex alpha(rng.next_gaussian(), rng.next_gaussian());
      const Mat4 left = qent::kron(alpha * a + b, d);
      const Mat4 right = alpha * qent::kron(a, d) + qent::kron(b, d);
      const Mat4 left2 = qent::kron(d, alpha * a + b);
      const Mat4 right2 = alpha * qent::kron(d, a) + qent::kron(d, b);
      worst = std::max(worst, max_abs_diff(left, right));
      worst = std::max(worst, max_abs_diff(left2, right2));
    }
    if (worst > 1e-12) return describe("bilinearity deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("qmath/kron-trace", c.count(50, 10), [&]() -> std::optional<std::string> {
    SplitMix64 rng(c.stream(kTagTrace));
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const Mat2 a = random_mat2(rng);
      const Mat2 b = random_mat2(rng);
      const Complex lhs = qent::kron(a, b).trace();
      const Complex rhs = a.trace() * b.trace();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    if (worst > 1e-12) return describe("trace deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("qmath/dagger-antihom", c.count(50, 10), [&]() -> std::optional<std::string> {
    SplitMix64 rng(c.stream(kTagDagger));
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const Mat4 a = qent::kron(random_mat2(rng), random_mat2(rng));
      const Mat4 b = qent::kron(random_mat2(rng), random_mat2(rng));
      const Mat4 lhs = qent::dagger(qent::matmul(a, b));
      const Mat4 rhs = qent::matmul(qent::dagger(b), qent::dagger(a));
      worst = std::max(worst, max_abs_diff(lhs, rhs));
    }
    if (worst > 1e-12) return describe("anti-automorphism deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("qmath/eigen-recovery", c.count(50, 10), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const FullLocalUnitary lu =
          qent::haar_local_unitary(c.stream(kTagEigen, static_cast<std::uint64_t>(i)));
      const Mat4 u = qent::kron(lu.u_a(), lu.u_b());
      SplitMix64 rng(c.stream(kTagEigen, 1000 + static_cast<std::uint64_t>(i)));
      std::array<double, 4> diag{};
      for (auto& d : diag) d = rng.next_gaussian();
      Mat4 dm = Mat4::Zero();
      for (int k = 0; k < 4; ++k) dm(k, k) = diag[k];
      const Mat4 a = u * dm * u.adjoint();
      const auto eigs = qent::hermitian_eigenvalues(a);
      std::sort(diag.begin(), diag.end(), std::greater<double>());
      for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(eigs[static_cast<std::size_t>(k)] -
                                         diag[static_cast<std::size_t>(k)]));
      }
    }
    if (worst > 1e-9) return describe("eigenvalue recovery error", worst, 1e-9);
    return std::nullopt;
  });
}

void add_states_checks(Checker& c) {
  c.run("states/werner-is-bell-diagonal", 21, [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double p = 0.05 * i;
      const double r = (1.0 - p) / 3.0;
      const DensityMatrix w = qent::werner_state(p);
      const DensityMatrix b = qent::bell_diagonal_state({r, r, r, p});
      worst = std::max(worst, max_abs_diff(w.matrix(), b.matrix()));
    }
    if (worst > 1e-12) return describe("entry deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("states/two-pure-mixture-endpoint", 11, [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
      const double a = 0.1 * i;
      Vec4 amps;
      amps << a, 0.0, 0.0, std::sqrt(1.0 - a * a);
      const DensityMatrix direct = qent::density_from_pure(PureState(amps));
      const DensityMatrix mixed = qent::horodecki_state(a, 1.0);
      worst = std::max(worst, max_abs_diff(direct.matrix(), mixed.matrix()));
    }
    if (worst > 1e-12) return describe("endpoint deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("states/bell-diagonal-spectrum", c.count(50, 10), [&]() -> std::optional<std::string> {
    SplitMix64 rng(c.stream(kTagSimplex));
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      std::array<double, 4> lambdas{};
      double sum = 0.0;
      for (auto& l : lambdas) {
        l = -std::log(rng.next_double_positive());
        sum += l;
      }
      for (auto& l : lambdas) l /= sum;
      const DensityMatrix rho = qent::bell_diagonal_state(lambdas);
      const auto eigs = qent::hermitian_eigenvalues(rho.matrix());
      std::array<double, 4> sorted = lambdas;
      std::sort(sorted.begin(), sorted.end(), std::greater<double>());
      for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(eigs[static_cast<std::size_t>(k)] -
                                         sorted[static_cast<std::size_t>(k)]));
      }
    }
    if (worst > 1e-9) return describe("spectrum deviation", worst, 1e-9);
    return std::nullopt;
  });

  c.run("states/generators-validate", c.count(100, 20), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(100, 20); ++i) {
      const auto seed = c.stream(kTagGenerators, static_cast<std::uint64_t>(i));
      const PureState psi = qent::haar_random_pure(seed);
      const DensityMatrix pure = qent::density_from_pure(psi);
      const DensityMatrix mixed = qent::random_mixed(seed, 1 + i % 4);
      SplitMix64 rng(c.stream(kTagGenerators, 1000 + static_cast<std::uint64_t>(i)));
      const DensityMatrix prod =
          qent::product_state(random_density2(rng), random_density2(rng));
      worst = std::max(worst, std::abs(pure.matrix().trace().real() - 1.0));
      worst = std::max(worst, std::abs(mixed.matrix().trace().real() - 1.0));
      worst = std::max(worst, std::abs(prod.matrix().trace().real() - 1.0));
    }
    if (worst > 1e-10) return describe("trace deviation", worst, 1e-10);
    return std::nullopt;
  });
}

void add_phase_povm_checks(Checker& c) {
  c.run("povm/single-qubit-completeness", 3, [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (const double gamma : {0.3, 0.7, 1.0}) {
      Mat2 sum = Mat2::Zero();
      const int n = 16;
      for (int k = 0; k < n; ++k) {
        sum += qent::single_qubit_povm_element(2.0 * kPi * k / n, gamma) *
               (2.0 * kPi / n);
      }
      worst = std::max(worst, (sum - Mat2::Identity()).cwiseAbs().maxCoeff());
    }
    if (worst > 1e-12) return describe("completeness deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("povm/distribution-normalized", c.count(30, 6) * 3, [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(30, 6); ++i) {
      const DensityMatrix rho = random_state(c, kTagDistribution, i);
      for (const double gamma : {0.3, 0.7, 1.0}) {
        const auto dist = qent::joint_phase_distribution(rho, PhaseGrid(16, 16), gamma);
        double sum = 0.0;
        double min_value = 0.0;
        for (const double v : dist.values) {
          sum += v;
          min_value = std::min(min_value, v);
        }
        const double cell = (2.0 * kPi / 16) * (2.0 * kPi / 16);
        worst = std::max(worst, std::abs(sum * cell - 1.0));
        worst = std::max(worst, -min_value);
      }
    }
    if (worst > 1e-10) return describe("normalization/positivity deviation", worst, 1e-10);
    return std::nullopt;
  });

  c.run("povm/fourier-matches-closed-form",
        c.count(160, 14), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    const auto check = [&worst](const DensityMatrix& rho) {
      const double closed = qent::gamma_closed_form(rho);
      for (const int n : {4, 8, 16}) {
        const double numeric = qent::gamma_numeric(rho, PhaseGrid(n, n));
        worst = std::max(worst, std::abs(numeric - closed));
      }
    };
    for (int i = 0; i < c.count(40, 8); ++i) {
      check(random_state(c, kTagFourier, i));
    }
    for (const auto& rho : werner_grid(c.level == ValidateLevel::Quick)) check(rho);
    if (c.level != ValidateLevel::Quick) {
      for (const auto& rho : two_pure_mixture_grid(false)) check(rho);
    }
    if (worst > 1e-10) return describe("two-path deviation", worst, 1e-10);
    return std::nullopt;
  });

  c.run("povm/product-states-null", c.count(40, 8), [&]() -> std::optional<std::string> {
    SplitMix64 rng(c.stream(kTagProduct));
    double worst = 0.0;
    for (int i = 0; i < c.count(40, 8); ++i) {
      const DensityMatrix rho =
          qent::product_state(random_density2(rng), random_density2(rng));
      worst = std::max(worst, qent::gamma_closed_form(rho));
      worst = std::max(worst, qent::gamma_numeric(rho, PhaseGrid(8, 8)));
    }
    if (worst > 1e-10) return describe("product-state gauge", worst, 1e-10);
    return std::nullopt;
  });

  c.run("povm/bell-projector-unit-gauge", 2, [&]() -> std::optional<std::string> {
    const DensityMatrix bell =
        qent::density_from_pure(qent::bell_state(BellKind::PhiPlus));
    const double at_bell = qent::gamma_closed_form(bell);
    if (std::abs(at_bell - 1.0) > 1e-12) {
      return describe("Bell projector gauge error", std::abs(at_bell - 1.0), 1e-12);
    }
    const double rotated = qent::gamma_closed_form(rotated_bell_density());
    if (rotated > 1e-12) {
      return describe("rotated Bell projector gauge", rotated, 1e-12);
    }
    return std::nullopt;
  });
}

void add_local_unitary_checks(Checker& c) {
  c.run("unitary/pure-state-consistency", c.count(100, 20), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(100, 20); ++i) {
      const auto seed = c.stream(kTagPureConsistency, static_cast<std::uint64_t>(i));
      const PureState psi = qent::haar_random_pure(seed);
      const FullLocalUnitary u =
          qent::haar_local_unitary(c.stream(kTagPureConsistency, 1000 + static_cast<std::uint64_t>(i)));
      const Vec4 rotated = qent::kron(u.u_a(), u.u_b()) * psi.amplitudes();
      const DensityMatrix via_amplitudes =
          qent::density_from_pure(PureState(rotated));
      const DensityMatrix via_conjugation =
          qent::apply(u, qent::density_from_pure(psi));
      worst = std::max(worst, max_abs_diff(via_amplitudes.matrix(),
                                           via_conjugation.matrix()));
    }
    if (worst > 1e-12) return describe("conjugation deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("unitary/corner-phase-quotient", c.count(50, 10), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    double worst_gauge = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const DensityMatrix rho = random_state(c, kTagCornerPhase, i);
      SplitMix64 rng(c.stream(kTagCornerPhase, 1000 + static_cast<std::uint64_t>(i)));
      qent::PhaseOnlyParams phases;
      phases.theta_a = 2.0 * kPi * rng.next_double();
      phases.theta_b = 2.0 * kPi * rng.next_double();
      const DensityMatrix direct = qent::apply_phase_only(phases, rho);
      Mat2 da = Mat2::Identity();
      Mat2 db = Mat2::Identity();
      da(1, 1) = std::polar(1.0, phases.theta_a);
      db(1, 1) = std::polar(1.0, phases.theta_b);
      const DensityMatrix via_apply =
          qent::apply(FullLocalUnitary(da, db), rho);
      worst = std::max(worst, max_abs_diff(direct.matrix(), via_apply.matrix()));
      worst_gauge = std::max(worst_gauge,
                             std::abs(qent::gamma_closed_form(direct) -
                                      qent::gamma_closed_form(rho)));
    }
    if (worst > 1e-12) return describe("corner-phase action deviation", worst, 1e-12);
    if (worst_gauge > 1e-12) return describe("gauge drift under corner phases", worst_gauge, 1e-12);
    return std::nullopt;
  });

  c.run("unitary/spectrum-preserved", c.count(50, 10), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const DensityMatrix rho = random_state(c, kTagSpectrum, i);
      const FullLocalUnitary u =
          qent::haar_local_unitary(c.stream(kTagSpectrum, 1000 + static_cast<std::uint64_t>(i)));
      const auto before = qent::hermitian_eigenvalues(rho.matrix());
      const auto after = qent::hermitian_eigenvalues(qent::apply(u, rho).matrix());
      for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(before[static_cast<std::size_t>(k)] -
                                         after[static_cast<std::size_t>(k)]));
      }
    }
    if (worst > 1e-9) return describe("spectrum deviation", worst, 1e-9);
    return std::nullopt;
  });

  c.run("unitary/hadamard-rotates-bell", 1, [&]() -> std::optional<std::string> {
    Mat2 h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    const DensityMatrix bell =
        qent::density_from_pure(qent::bell_state(BellKind::PhiPlus));
    const DensityMatrix moved =
        qent::apply(FullLocalUnitary(h, Mat2::Identity()), bell);
    const double dev = max_abs_diff(moved.matrix(), rotated_bell_density().matrix());
    if (dev > 1e-12) return describe("Hadamard image deviation", dev, 1e-12);
    return std::nullopt;
  });
}

void add_gamma_sup_checks(Checker& c) {
  OptimizerConfig cfg;
  cfg.seed = c.stream(kTagDominates, 999);

  c.run("ascent/dominates-random-unitaries", c.count(10, 3) * 50,
        [&]() -> std::optional<std::string> {
    double worst = -1.0;
    for (int i = 0; i < c.count(10, 3); ++i) {
      const DensityMatrix rho = random_state(c, kTagDominates, i);
      const double sup = qent::coordinate_ascent(rho, cfg).value;
      for (int j = 0; j < 50; ++j) {
        const FullLocalUnitary u = qent::haar_local_unitary(
            c.stream(kTagDominates, 1000 + static_cast<std::uint64_t>(i) * 64 +
                                        static_cast<std::uint64_t>(j)));
        const double below = qent::gamma_closed_form(qent::apply(u, rho));
        worst = std::max(worst, below - sup);
      }
    }
    if (worst > 1e-6) return describe("random unitary exceeds ascent by", worst, 1e-6);
    return std::nullopt;
  });

  c.run("ascent/local-basis-invariant", c.count(10, 3), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(10, 3); ++i) {
      const DensityMatrix rho = random_state(c, kTagInvariant, i);
      const FullLocalUnitary u =
          qent::haar_local_unitary(c.stream(kTagInvariant, 1000 + static_cast<std::uint64_t>(i)));
      const double direct = qent::coordinate_ascent(rho, cfg).value;
      const double moved = qent::coordinate_ascent(qent::apply(u, rho), cfg).value;
      worst = std::max(worst, std::abs(direct - moved));
    }
    if (worst > 2e-6) return describe("basis dependence of supremum", worst, 2e-6);
    return std::nullopt;
  });

  c.run("ascent/pure-equals-concurrence", c.count(60, 10), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(60, 10); ++i) {
      const PureState psi =
          qent::haar_random_pure(c.stream(kTagPureEquals, static_cast<std::uint64_t>(i)));
      const double sup =
          qent::coordinate_ascent(qent::density_from_pure(psi), cfg).value;
      worst = std::max(worst, std::abs(sup - qent::concurrence_pure(psi)));
    }
    if (worst > 1e-6) return describe("pure-state gap", worst, 1e-6);
    return std::nullopt;
  });

  c.run("ascent/restart-monotone", c.count(5, 2), [&]() -> std::optional<std::string> {
    for (int i = 0; i < c.count(5, 2); ++i) {
      const DensityMatrix rho = random_state(c, kTagRestarts, i);
      OptimizerConfig base = cfg;
      double prev = -1.0;
      for (const int restarts : {1, 2, 4}) {
        base.restarts = restarts;
        const double value = qent::coordinate_ascent(rho, base).value;
        if (value + 1e-15 < prev) {
          std::ostringstream ss;
          ss << "value dropped from " << prev << " to " << value << " at "
             << restarts << " restarts";
          return ss.str();
        }
        prev = value;
      }
    }
    return std::nullopt;
  });

  c.run("ascent/range-and-identity-floor", c.count(30, 6), [&]() -> std::optional<std::string> {
    for (int i = 0; i < c.count(30, 6); ++i) {
      const DensityMatrix rho = random_state(c, kTagRange, i);
      const double sup = qent::coordinate_ascent(rho, cfg).value;
      const double floor = qent::gamma_closed_form(rho);
      if (sup < floor - 1e-12) {
        return describe("ascent below the unrotated gauge by", floor - sup, 1e-12);
      }
      if (sup < 0.0 || sup > 1.0 + 1e-9) {
        return describe("supremum outside [0, 1]", sup, 1.0 + 1e-9);
      }
    }
    return std::nullopt;
  });

  c.run("ascent/basis-dependence-witness", 1, [&]() -> std::optional<std::string> {
    const DensityMatrix rotated = rotated_bell_density();
    const double raw = qent::gamma_closed_form(rotated);
    if (raw > 1e-12) return describe("rotated Bell raw gauge", raw, 1e-12);
    const double sup = qent::coordinate_ascent(rotated, cfg).value;
    if (std::abs(sup - 1.0) > 1e-6) {
      return describe("rotated Bell supremum error", std::abs(sup - 1.0), 1e-6);
    }
    return std::nullopt;
  });
}

void add_measures_checks(Checker& c) {
  c.run("measures/ppt-matches-concurrence", c.count(300, 60), [&]() -> std::optional<std::string> {
    for (int i = 0; i < c.count(300, 60); ++i) {
      const DensityMatrix rho = random_state(c, kTagPpt, i);
      const bool ppt = qent::is_ppt(rho);
      const double conc = qent::concurrence_mixed(rho);
      if (ppt != (conc <= 1e-6)) {
        std::ostringstream ss;
        ss << "state " << i << ": is_ppt = " << (ppt ? "true" : "false")
           << " but concurrence = " << conc;
        return ss.str();
      }
    }
    return std::nullopt;
  });

  c.run("measures/pure-concurrence-consistent", c.count(200, 40), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(200, 40); ++i) {
      const PureState psi =
          qent::haar_random_pure(c.stream(kTagPureConc, static_cast<std::uint64_t>(i)));
      const double mixed = qent::concurrence_mixed(qent::density_from_pure(psi));
      worst = std::max(worst, std::abs(mixed - qent::concurrence_pure(psi)));
    }
    if (worst > 1e-9) return describe("pure-reduction deviation", worst, 1e-9);
    return std::nullopt;
  });

  c.run("measures/local-unitary-invariant", c.count(50, 10), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const DensityMatrix rho = random_state(c, kTagMeasureLu, i);
      const FullLocalUnitary u =
          qent::haar_local_unitary(c.stream(kTagMeasureLu, 1000 + static_cast<std::uint64_t>(i)));
      const DensityMatrix moved = qent::apply(u, rho);
      worst = std::max(worst, std::abs(qent::concurrence_mixed(rho) -
                                       qent::concurrence_mixed(moved)));
      worst = std::max(worst, std::abs(qent::negativity(rho) -
                                       qent::negativity(moved)));
    }
    if (worst > 2e-9) return describe("invariance deviation", worst, 2e-9);
    return std::nullopt;
  });

  c.run("measures/partial-transpose-side-free", c.count(50, 10), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const DensityMatrix rho = random_state(c, kTagSideFree, i);
      const Mat4 pt_b = qent::partial_transpose(rho);
      Mat4 pt_a;
      for (int bi = 0; bi < 2; ++bi) {
        for (int bj = 0; bj < 2; ++bj) {
          pt_a.block<2, 2>(2 * bi, 2 * bj) =
              rho.matrix().block<2, 2>(2 * bj, 2 * bi);
        }
      }
      const auto eig_b = qent::hermitian_eigenvalues(pt_b);
      const auto eig_a = qent::hermitian_eigenvalues(pt_a);
      for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(eig_b[static_cast<std::size_t>(k)] -
                                         eig_a[static_cast<std::size_t>(k)]));
      }
    }
    if (worst > 1e-10) return describe("side dependence", worst, 1e-10);
    return std::nullopt;
  });
}

void add_bell_analyzer_checks(Checker& c) {
  c.run("analyzer/probabilities-complete", c.count(200, 40), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(200, 40); ++i) {
      const DensityMatrix rho = random_state(c, kTagProbabilities, i);
      const auto probs = qent::bell_probabilities(rho);
      const double sum =
          probs.p_phi_plus + probs.p_phi_minus + probs.p_psi_plus + probs.p_psi_minus;
      worst = std::max(worst, std::abs(sum - 1.0));
      for (const double p : {probs.p_phi_plus, probs.p_phi_minus,
                             probs.p_psi_plus, probs.p_psi_minus}) {
        worst = std::max(worst, -p);
      }
    }
    if (worst > 1e-10) return describe("completeness deviation", worst, 1e-10);
    return std::nullopt;
  });

  c.run("analyzer/corner-identities", c.count(200, 40), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(200, 40); ++i) {
      const DensityMatrix rho = random_state(c, kTagCorners, i);
      const auto diffs = qent::corner_differences(rho);
      worst = std::max(worst, std::abs(diffs.d1 - 2.0 * rho.corner_outer().real()));
      worst = std::max(worst, std::abs(diffs.d2 - 2.0 * rho.corner_inner().real()));
      const double vis_plus = qent::visibility(rho, qent::VisibilitySigns::PlusPlus);
      const double vis_minus = qent::visibility(rho, qent::VisibilitySigns::PlusMinus);
      worst = std::max(worst, std::abs(vis_plus - (diffs.d1 + diffs.d2)));
      worst = std::max(worst, std::abs(vis_minus - (diffs.d1 - diffs.d2)));
    }
    if (worst > 1e-12) return describe("identity deviation", worst, 1e-12);
    return std::nullopt;
  });

  c.run("analyzer/measured-corners-match", c.count(50, 10), [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < c.count(50, 10); ++i) {
      const DensityMatrix rho = random_state(c, kTagMeasuredCorners, i);
      const auto corners = qent::measured_abs_corners(rho, 16);
      worst = std::max(worst, std::abs(corners.abs14 - std::abs(rho.corner_outer())));
      worst = std::max(worst, std::abs(corners.abs23 - std::abs(rho.corner_inner())));
    }
    if (worst > 1e-9) return describe("recovered corner deviation", worst, 1e-9);
    return std::nullopt;
  });

  c.run("analyzer/protocol-matches-ascent",
        c.count(240, 11), [&]() -> std::optional<std::string> {
    OptimizerConfig cfg;
    cfg.seed = c.stream(kTagProtocol, 999);
    const bool quick = c.level == ValidateLevel::Quick;
    std::vector<DensityMatrix> states = werner_grid(quick);
    if (!quick) {
      for (auto& rho : two_pure_mixture_grid(false)) states.push_back(rho);
      for (auto& rho : bell_diagonal_points(c, false)) states.push_back(rho);
    }
    for (int i = 0; i < c.count(100, 5); ++i) {
      states.push_back(random_state(c, kTagProtocol, i));
    }
    double worst = 0.0;
    for (const auto& rho : states) {
      const double sup = qent::coordinate_ascent(rho, cfg).value;
      const auto protocol =
          qent::protocol_gamma_sup(rho, cfg, std::nullopt, cfg.seed);
      worst = std::max(worst, std::abs(protocol.gamma_sup_estimate - sup));
    }
    if (worst > 1e-4) return describe("protocol disagreement", worst, 1e-4);
    return std::nullopt;
  });

  c.run("analyzer/estimator-consistency", c.count(3, 1), [&]() -> std::optional<std::string> {
    // A state whose optimal analyzer setting is the identity, so the light
    // sampled search starts at the optimum and the residual error is pure
    // shot noise.
    const DensityMatrix rho = qent::werner_state(0.9);
    const double truth = std::abs(1.0 - 4.0 * 0.9) / 3.0;
    OptimizerConfig cfg;
    cfg.restarts = 1;
    cfg.sweeps_max = 1;
    cfg.line_search_points = 8;
    cfg.refine_tolerance = 0.3;
    const std::array<std::int64_t, 3> all_shots{1000, 10000, 100000};
    const int levels = c.count(3, 1);
    for (int k = 0; k < levels; ++k) {
      const std::int64_t shots = all_shots[static_cast<std::size_t>(k)];
      cfg.seed = c.stream(kTagEstimator, static_cast<std::uint64_t>(k));
      const auto result = qent::protocol_gamma_sup(
          rho, cfg, shots, c.stream(kTagEstimator, 100 + static_cast<std::uint64_t>(k)));
      const double error = std::abs(result.gamma_sup_estimate - truth);
      const double limit = 3.0 / std::sqrt(static_cast<double>(shots));
      if (error > limit) {
        std::ostringstream ss;
        ss << "error " << error << " at " << shots
           << " shots exceeds 3/sqrt(shots) = " << limit;
        return ss.str();
      }
    }
    return std::nullopt;
  });

  c.run("analyzer/sampling-frequencies", 1, [&]() -> std::optional<std::string> {
    const DensityMatrix mixed(Mat4::Identity() * 0.25);
    const auto counts =
        qent::sample_bell_outcomes(mixed, 1000000, c.stream(kTagSampling));
    double worst = 0.0;
    for (const std::int64_t n :
         {counts.n_phi_plus, counts.n_phi_minus, counts.n_psi_plus, counts.n_psi_minus}) {
      worst = std::max(worst, std::abs(static_cast<double>(n) / 1e6 - 0.25));
    }
    if (worst > 0.002) return describe("frequency deviation", worst, 0.002);
    return std::nullopt;
  });

  c.run("analyzer/sampling-deterministic", 2, [&]() -> std::optional<std::string> {
    const DensityMatrix rho = qent::werner_state(0.3);
    const auto a = qent::sample_bell_outcomes(rho, 50000, c.stream(kTagSampling, 7));
    const auto b = qent::sample_bell_outcomes(rho, 50000, c.stream(kTagSampling, 7));
    if (a.n_phi_plus != b.n_phi_plus || a.n_phi_minus != b.n_phi_minus ||
        a.n_psi_plus != b.n_psi_plus || a.n_psi_minus != b.n_psi_minus) {
      return std::string("same seed produced different counts");
    }
    return std::nullopt;
  });
}

void add_oracle_checks(Checker& c) {
  OptimizerConfig cfg;
  cfg.seed = c.stream(kTagOracleAgree, 999);

  c.run("oracle/ascent-agrees", 20, [&]() -> std::optional<std::string> {
    const double bound =
        std::max(2e-3, qent::brute_force_oracle_bound(24));
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const DensityMatrix rho = random_state(c, kTagOracleAgree, i);
      const double ascent = qent::coordinate_ascent(rho, cfg).value;
      const double oracle = qent::brute_force_oracle(rho, 24);
      worst = std::max(worst, std::abs(ascent - oracle));
    }
    if (worst > bound) return describe("ascent/oracle gap", worst, bound);
    return std::nullopt;
  });

  c.run("oracle/doubling-monotone", 5, [&]() -> std::optional<std::string> {
    for (int i = 0; i < 5; ++i) {
      const DensityMatrix rho = random_state(c, kTagOracleDouble, i);
      const double o8 = qent::brute_force_oracle(rho, 8);
      const double o16 = qent::brute_force_oracle(rho, 16);
      const double o32 = qent::brute_force_oracle(rho, 32);
      if (o8 > o16 + 1e-12 || o16 > o32 + 1e-12) {
        std::ostringstream ss;
        ss << "grid maximum not monotone: " << o8 << ", " << o16 << ", " << o32;
        return ss.str();
      }
    }
    return std::nullopt;
  });

  c.run("oracle/parameterization-collapse", 10, [&]() -> std::optional<std::string> {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const DensityMatrix rho = random_state(c, kTagOracleCollapse, i);
      const double four = qent::brute_force_oracle(rho, 12, false);
      const double six = qent::brute_force_oracle(rho, 12, true);
      worst = std::max(worst, std::abs(four - six));
    }
    if (worst > 1e-9) return describe("parameterization gap", worst, 1e-9);
    return std::nullopt;
  });
}

}  // namespace

int run_validate_suite(ValidateLevel level, std::uint64_t seed,
                       std::ostream& out) {
  Checker checker{level, RngSeed{seed}, out};
  const char* level_name = level == ValidateLevel::Quick    ? "quick"
                           : level == ValidateLevel::Oracle ? "oracle"
                                                            : "full";
  out << "validate: level " << level_name << ", seed " << seed << "\n";

  add_qmath_checks(checker);
  add_states_checks(checker);
  add_phase_povm_checks(checker);
  add_local_unitary_checks(checker);
  add_gamma_sup_checks(checker);
  add_measures_checks(checker);
  add_bell_analyzer_checks(checker);
  if (level == ValidateLevel::Oracle) {
    add_oracle_checks(checker);
  }

  out << "validate: " << checker.total << " checks, " << checker.failures
      << " failed\n";
  return checker.failures;
}

}  // namespace qtool
