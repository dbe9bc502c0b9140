#include "commands.hpp"

#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include <qent/bell_analyzer.hpp>
#include <qent/gamma_sup.hpp>
#include <qent/json_io.hpp>
#include <qent/measures.hpp>
#include <qent/phase_povm.hpp>
#include <qent/states.hpp>

#include "csv.hpp"
#include "validate_suite.hpp"

namespace qtool {
namespace {

using nlohmann::json;

constexpr int kComputeOracleResolution = 24;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot read state file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qent::DensityMatrix load_state(const std::string& state_path,
                               const std::string& family_inline) {
  const bool has_path = !state_path.empty();
  const bool has_inline = !family_inline.empty();
  if (has_path == has_inline) {
    throw std::invalid_argument(
        "exactly one of --state <path> or --family <json> is required");
  }
  const std::string text =
      has_path ? read_text_file(state_path) : family_inline;
  return qent::parse_state_descriptor(text);
}

qent::OptimizerConfig make_config(const GlobalOptions& global) {
  qent::OptimizerConfig cfg;
  cfg.seed = qent::RngSeed{global.seed};
  cfg.restarts = global.restarts;
  cfg.refine_tolerance = global.tolerance;
  return cfg;
}

std::ofstream open_output_file(const std::string& path) {
  std::ofstream ofs(path, std::ios::binary);
  if (!ofs) {
    throw std::invalid_argument("cannot open output path for writing: " +
                                path);
  }
  return ofs;
}

void finish_output_file(std::ofstream& ofs, const std::string& path) {
  ofs.flush();
  if (!ofs) {
    throw std::invalid_argument("writing output failed: " + path);
  }
}

// Measures accepted by --measures, in canonical column order. `visibility`
// (the raw combined readout) is sweep-only; the report JSON has no key for
// it.
enum class Measure { Gamma, GammaSup, Concurrence, Negativity, Ppt, Visibility };

struct MeasureName {
  const char* token;  // --measures token and CSV column
  const char* key;    // report JSON key, nullptr when absent from the report
  Measure measure;
};

constexpr std::array<MeasureName, 6> kMeasureNames{{
    {"gamma", "gamma", Measure::Gamma},
    {"gamma_sup", "gamma_sup", Measure::GammaSup},
    {"concurrence", "concurrence", Measure::Concurrence},
    {"negativity", "negativity", Measure::Negativity},
    {"ppt", "is_ppt", Measure::Ppt},
    {"visibility", nullptr, Measure::Visibility},
}};

std::vector<MeasureName> parse_measures(const std::string& list,
                                        bool allow_visibility) {
  std::vector<bool> wanted(kMeasureNames.size(), list.empty());
  if (list.empty()) {
    wanted.back() = allow_visibility;
  } else {
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ',')) {
      bool found = false;
      for (std::size_t i = 0; i < kMeasureNames.size(); ++i) {
        if (token == kMeasureNames[i].token) {
          if (kMeasureNames[i].measure == Measure::Visibility &&
              !allow_visibility) {
            throw std::invalid_argument(
                "measure 'visibility' is only available in sweeps");
          }
          wanted[i] = true;
          found = true;
          break;
        }
      }
      if (!found) {
        throw std::invalid_argument("unknown measure: " + token);
      }
    }
  }
  std::vector<MeasureName> out;
  for (std::size_t i = 0; i < kMeasureNames.size(); ++i) {
    if (wanted[i]) {
      out.push_back(kMeasureNames[i]);
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("--measures selected nothing");
  }
  return out;
}

double measure_value(Measure measure, const qent::DensityMatrix& rho,
                     const qent::OptimizerConfig& cfg) {
  switch (measure) {
    case Measure::Gamma:
      return qent::gamma_closed_form(rho);
    case Measure::GammaSup:
      return qent::coordinate_ascent(rho, cfg).value;
    case Measure::Concurrence:
      return qent::concurrence_mixed(rho);
    case Measure::Negativity:
      return qent::negativity(rho);
    case Measure::Ppt:
      return qent::is_ppt(rho) ? 1.0 : 0.0;
    case Measure::Visibility:
      return qent::visibility(rho, qent::VisibilitySigns::PlusPlus);
  }
  throw std::logic_error("unreachable measure");
}

void write_distribution_csv(std::ostream& os, const qent::DensityMatrix& rho,
                            int grid_nodes) {
  const qent::PhaseGrid grid(grid_nodes, grid_nodes);
  const auto dist = qent::joint_phase_distribution(rho, grid, 1.0);
  os << "phi_plus,phi_minus,p_value\n";
  for (int i = 0; i < grid.n_plus; ++i) {
    for (int j = 0; j < grid.n_minus; ++j) {
      os << csv_real(grid.node_plus(i)) << ',' << csv_real(grid.node_minus(j))
         << ',' << csv_real(dist.value(i, j)) << '\n';
    }
  }
}

// One --range axis: `steps` equally spaced values from start to stop.
struct RangeSpec {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  double at(int i) const {
    if (steps == 1) {
      return start;
    }
    return start + (stop - start) * static_cast<double>(i) /
                       static_cast<double>(steps - 1);
  }
};

RangeSpec parse_range(const std::string& text) {
  const auto bad = [&text]() {
    return std::invalid_argument("range must look like name=start:stop:steps: " +
                                 text);
  };
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw bad();
  }
  RangeSpec spec;
  spec.name = text.substr(0, eq);
  const std::string rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos
                                          : rest.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw bad();
  }
  std::size_t used1 = 0;
  std::size_t used2 = 0;
  std::size_t used3 = 0;
  const std::string f1 = rest.substr(0, c1);
  const std::string f2 = rest.substr(c1 + 1, c2 - c1 - 1);
  const std::string f3 = rest.substr(c2 + 1);
  try {
    spec.start = std::stod(f1, &used1);
    spec.stop = std::stod(f2, &used2);
    spec.steps = std::stoi(f3, &used3);
  } catch (const std::exception&) {
    throw bad();
  }
  if (used1 != f1.size() || used2 != f2.size() || used3 != f3.size()) {
    throw bad();
  }
  if (!(std::isfinite(spec.start) && std::isfinite(spec.stop))) {
    throw bad();
  }
  if (spec.steps < 1) {
    throw std::invalid_argument("range steps must be >= 1: " + text);
  }
  return spec;
}

// A sweep resolved to ordered axes plus a state builder. Axis order is the
// family's canonical parameter order, so nested iteration gives rows in
// lexicographic parameter order.
struct SweepPlan {
  std::vector<RangeSpec> axes;
  std::function<qent::DensityMatrix(const std::vector<double>&)> build;
};

SweepPlan plan_sweep(const std::string& family,
                     const std::vector<std::string>& ranges) {
  std::map<std::string, RangeSpec> by_name;
  for (const auto& text : ranges) {
    RangeSpec spec = parse_range(text);
    const std::string name = spec.name;
    if (!by_name.emplace(name, std::move(spec)).second) {
      throw std::invalid_argument("duplicate range for parameter: " + name);
    }
  }
  const auto take = [&by_name](const std::string& name) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw std::invalid_argument("missing --range for parameter: " + name);
    }
    RangeSpec spec = std::move(it->second);
    by_name.erase(it);
    return spec;
  };

  SweepPlan plan;
  if (family == "horodecki") {
    plan.axes.push_back(take("a"));
    plan.axes.push_back(take("p"));
    plan.build = [](const std::vector<double>& v) {
      return qent::horodecki_state(v[0], v[1]);
    };
  } else if (family == "werner") {
    plan.axes.push_back(take("p"));
    plan.build = [](const std::vector<double>& v) {
      return qent::werner_state(v[0]);
    };
  } else if (family == "bell_diagonal") {
    // Swept weights are l1 (always), then optionally l2 and l3. The first
    // unswept weight absorbs 1 - sum, the rest are zero, so sweeping l1
    // alone walks the two-eigenvalue family (l1, 1 - l1, 0, 0).
    plan.axes.push_back(take("l1"));
    const bool has_l2 = by_name.count("l2") != 0;
    const bool has_l3 = by_name.count("l3") != 0;
    if (has_l3 && !has_l2) {
      throw std::invalid_argument("range l3 requires range l2");
    }
    if (has_l2) {
      plan.axes.push_back(take("l2"));
    }
    if (has_l3) {
      plan.axes.push_back(take("l3"));
    }
    const std::size_t swept = plan.axes.size();
    plan.build = [swept](const std::vector<double>& v) {
      std::array<double, 4> lambdas{0.0, 0.0, 0.0, 0.0};
      double sum = 0.0;
      for (std::size_t i = 0; i < swept; ++i) {
        lambdas[i] = v[i];
        sum += v[i];
      }
      lambdas[swept] = 1.0 - sum;
      return qent::bell_diagonal_state(lambdas);
    };
  } else {
    throw std::invalid_argument(
        "unknown family: " + family +
        " (expected horodecki, werner, or bell_diagonal)");
  }
  if (!by_name.empty()) {
    throw std::invalid_argument("unknown range parameter for family " +
                                family + ": " + by_name.begin()->first);
  }
  for (const auto& axis : plan.axes) {
    for (int i = 0; i < axis.steps; ++i) {
      const double v = axis.at(i);
      if (v < -1e-12 || v > 1.0 + 1e-12) {
        throw std::invalid_argument("range value out of [0, 1] for parameter " +
                                    axis.name);
      }
    }
  }
  return plan;
}

// Walks the full grid once without building states, so simplex violations
// surface as a usage error before any output row is written.
void prevalidate_grid(const SweepPlan& plan) {
  std::vector<int> idx(plan.axes.size(), 0);
  for (;;) {
    double sum = 0.0;
    for (std::size_t k = 0; k < plan.axes.size(); ++k) {
      sum += plan.axes[k].at(idx[k]);
    }
    if (sum > 1.0 + 1e-10) {
      std::ostringstream msg;
      msg << "grid point leaves the weight simplex (sum of swept weights "
          << sum << " > 1)";
      throw std::invalid_argument(msg.str());
    }
    int k = static_cast<int>(plan.axes.size()) - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] ==
                         plan.axes[static_cast<std::size_t>(k)].steps) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) {
      break;
    }
  }
}

void write_json_output(const GlobalOptions& global, const std::string& text) {
  if (global.out.empty()) {
    std::cout << text;
    return;
  }
  auto ofs = open_output_file(global.out);
  ofs << text;
  finish_output_file(ofs, global.out);
}

}  // namespace

int run_compute(const GlobalOptions& global, const ComputeOptions& opts) {
  const qent::DensityMatrix rho =
      load_state(opts.state_path, opts.family_inline);
  const std::vector<MeasureName> measures =
      parse_measures(opts.measures, /*allow_visibility=*/false);
  const qent::OptimizerConfig cfg = make_config(global);

  const std::optional<int> oracle_resolution =
      global.oracle ? std::optional<int>(kComputeOracleResolution)
                    : std::nullopt;
  const qent::GammaSupResult ascent = qent::gamma_sup(rho, cfg, oracle_resolution);

  qent::MeasureReport report;
  report.gamma = qent::gamma_closed_form(rho);
  report.gamma_sup = ascent.value;
  report.concurrence = qent::concurrence_mixed(rho);
  report.negativity = qent::negativity(rho);
  report.is_ppt = qent::is_ppt(rho);

  json doc = json::parse(qent::measure_report_text(report));
  for (const auto& name : kMeasureNames) {
    if (name.key == nullptr) {
      continue;
    }
    bool keep = false;
    for (const auto& selected : measures) {
      keep = keep || selected.measure == name.measure;
    }
    if (!keep) {
      doc.erase(name.key);
    }
  }
  if (global.oracle) {
    doc["gamma_sup_result"] = json::parse(qent::gamma_sup_result_text(ascent));
  }

  if (!opts.dump_state.empty()) {
    auto ofs = open_output_file(opts.dump_state);
    ofs << qent::density_descriptor_text(rho);
    finish_output_file(ofs, opts.dump_state);
  }
  if (!opts.dist_out.empty()) {
    auto ofs = open_output_file(opts.dist_out);
    write_distribution_csv(ofs, rho, opts.dist_grid);
    finish_output_file(ofs, opts.dist_out);
  }

  write_json_output(global, doc.dump(2) + "\n");
  return 0;
}

int run_sweep(const GlobalOptions& global, const SweepOptions& opts) {
  const SweepPlan plan = plan_sweep(opts.family, opts.ranges);
  prevalidate_grid(plan);
  const std::vector<MeasureName> measures =
      parse_measures(opts.measures, /*allow_visibility=*/true);
  const qent::OptimizerConfig cfg = make_config(global);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!global.out.empty()) {
    file = open_output_file(global.out);
    os = &file;
  }

  for (std::size_t k = 0; k < plan.axes.size(); ++k) {
    *os << (k == 0 ? "" : ",") << plan.axes[k].name;
  }
  for (const auto& m : measures) {
    *os << ',' << m.token;
  }
  *os << '\n';

  std::vector<int> idx(plan.axes.size(), 0);
  std::vector<double> point(plan.axes.size(), 0.0);
  for (;;) {
    for (std::size_t k = 0; k < plan.axes.size(); ++k) {
      point[k] = plan.axes[k].at(idx[k]);
    }
    const qent::DensityMatrix rho = plan.build(point);
    for (std::size_t k = 0; k < point.size(); ++k) {
      *os << (k == 0 ? "" : ",") << csv_real(point[k]);
    }
    for (const auto& m : measures) {
      *os << ',' << csv_real(measure_value(m.measure, rho, cfg));
    }
    *os << '\n';

    int k = static_cast<int>(plan.axes.size()) - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] ==
                         plan.axes[static_cast<std::size_t>(k)].steps) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) {
      break;
    }
  }
  if (!global.out.empty()) {
    finish_output_file(file, global.out);
  }
  return 0;
}

int run_validate(const GlobalOptions& global) {
  if (global.quick && global.oracle) {
    throw std::invalid_argument("--quick and --oracle are mutually exclusive");
  }
  const ValidateLevel level = global.oracle  ? ValidateLevel::Oracle
                              : global.quick ? ValidateLevel::Quick
                                             : ValidateLevel::Full;
  int failures = 0;
  if (global.out.empty()) {
    failures = run_validate_suite(level, global.seed, std::cout);
  } else {
    auto ofs = open_output_file(global.out);
    failures = run_validate_suite(level, global.seed, ofs);
    finish_output_file(ofs, global.out);
  }
  return failures == 0 ? 0 : 1;
}

int run_bell_sim(const GlobalOptions& global, const BellSimOptions& opts) {
  const qent::DensityMatrix rho =
      load_state(opts.state_path, opts.family_inline);
  if (global.out.empty()) {
    throw std::invalid_argument(
        "bell-sim requires --out <path> for the per-setting CSV trace");
  }

  // Sampled readouts cost O(shots) each, so the analyzer search defaults to
  // a light schedule; explicit --restarts / --tolerance override it.
  qent::OptimizerConfig cfg = make_config(global);
  if (!global.restarts_given) {
    cfg.restarts = 2;
  }
  if (!global.tolerance_given) {
    cfg.refine_tolerance = 0.3;
  }
  cfg.sweeps_max = 3;
  cfg.line_search_points = 8;

  auto csv = open_output_file(global.out);
  csv << "setting_index,phi,vartheta,theta_a,theta_b,"
         "n_phi_plus,n_phi_minus,n_psi_plus,n_psi_minus,estimate\n";
  const qent::ProtocolObserver observer =
      [&csv](const qent::ProtocolSettingRecord& rec) {
        csv << csv_int(rec.setting_index) << ','
            << csv_real(rec.params.phi_mix) << ','
            << csv_real(rec.params.theta_mix) << ','
            << csv_real(rec.params.theta_a) << ','
            << csv_real(rec.params.theta_b) << ','
            << csv_int(rec.counts.n_phi_plus) << ','
            << csv_int(rec.counts.n_phi_minus) << ','
            << csv_int(rec.counts.n_psi_plus) << ','
            << csv_int(rec.counts.n_psi_minus) << ','
            << csv_real(rec.estimate) << '\n';
      };

  const qent::ProtocolResult result = qent::protocol_gamma_sup(
      rho, cfg, opts.shots, qent::RngSeed{global.seed}, observer);
  finish_output_file(csv, global.out);

  std::cout << qent::protocol_result_text(result);
  return 0;
}

}  // namespace qtool
