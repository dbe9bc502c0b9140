#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_state_options(CLI::App* cmd, std::string& state_path,
                       std::string& family_inline) {
  cmd->add_option("--state", state_path,
                  "path to a state descriptor JSON file");
  cmd->add_option("--family", family_inline,
                  "inline state descriptor JSON (e.g. "
                  "'{\"kind\":\"werner\",\"p\":0.3}')");
}

}  // namespace

int main(int argc, char** argv) {
  qtool::GlobalOptions global;
  qtool::ComputeOptions compute_opts;
  qtool::SweepOptions sweep_opts;
  qtool::BellSimOptions bell_opts;

  CLI::App app{"Joint-phase entanglement gauge toolkit for two qubits"};
  app.require_subcommand(1);

  app.add_option("--seed", global.seed, "optimizer and sampling seed")
      ->capture_default_str();
  auto* restarts_opt =
      app.add_option("--restarts", global.restarts,
                     "coordinate-ascent restarts (restart 0 is the identity)")
          ->capture_default_str();
  auto* tolerance_opt =
      app.add_option("--tolerance", global.tolerance,
                     "golden-section refinement tolerance")
          ->capture_default_str();
  app.add_flag("--oracle", global.oracle,
               "compute: cross-check the ascent against the brute-force "
               "grid; validate: add the brute-force checks");
  app.add_flag("--quick", global.quick,
               "validate: reduced sample counts (finishes in seconds)");
  app.add_option("--out", global.out,
                 "output path (default stdout); bell-sim writes its CSV "
                 "trace here and prints the JSON summary to stdout");

  CLI::App* compute = app.add_subcommand(
      "compute", "evaluate the gauge, its supremum, and reference measures "
                 "for one state, printed as JSON");
  add_state_options(compute, compute_opts.state_path,
                    compute_opts.family_inline);
  compute->add_option("--measures", compute_opts.measures,
                      "comma-separated subset of "
                      "gamma,gamma_sup,concurrence,negativity,ppt");
  compute->add_option("--dump-state", compute_opts.dump_state,
                      "also write the state as a density descriptor JSON");
  compute->add_option("--dist-out", compute_opts.dist_out,
                      "also write the joint phase distribution as CSV");
  compute->add_option("--grid", compute_opts.dist_grid,
                      "phase nodes per axis for --dist-out")
      ->capture_default_str();
  compute->fallthrough();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate measures over a family parameter grid as CSV");
  sweep->add_option("family", sweep_opts.family,
                    "state family: horodecki, werner, or bell_diagonal")
      ->required();
  sweep->add_option("--range", sweep_opts.ranges,
                    "parameter range name=start:stop:steps (repeatable)");
  sweep->add_option("--measures", sweep_opts.measures,
                    "comma-separated subset of "
                    "gamma,gamma_sup,concurrence,negativity,ppt,visibility");
  sweep->fallthrough();

  CLI::App* validate = app.add_subcommand(
      "validate", "run the library's invariant checks and report "
                  "[PASS]/[FAIL] per check");
  validate->fallthrough();

  CLI::App* bell_sim = app.add_subcommand(
      "bell-sim", "simulate the analyzer measurement protocol with "
                  "multinomial shot noise");
  add_state_options(bell_sim, bell_opts.state_path, bell_opts.family_inline);
  bell_sim->add_option("--shots", bell_opts.shots,
                       "shots per phase readout (at least 1000)")
      ->required();
  bell_sim->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  global.restarts_given = restarts_opt->count() > 0;
  global.tolerance_given = tolerance_opt->count() > 0;

  try {
    if (app.got_subcommand(compute)) {
      return qtool::run_compute(global, compute_opts);
    }
    if (app.got_subcommand(sweep)) {
      return qtool::run_sweep(global, sweep_opts);
    }
    if (app.got_subcommand(validate)) {
      return qtool::run_validate(global);
    }
    if (app.got_subcommand(bell_sim)) {
      return qtool::run_bell_sim(global, bell_opts);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
