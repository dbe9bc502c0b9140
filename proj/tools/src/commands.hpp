#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qtool {

// Flags shared by every subcommand.
struct GlobalOptions {
  std::uint64_t seed = 0;
  int restarts = 8;
  double tolerance = 1e-9;
  bool restarts_given = false;   // distinguishes defaults from explicit values
  bool tolerance_given = false;  // (bell-sim uses lighter defaults)
  bool oracle = false;
  bool quick = false;
  std::string out;  // output path; empty means stdout
};

struct ComputeOptions {
  std::string state_path;
  std::string family_inline;
  std::string measures;  // comma-separated subset; empty keeps all
  std::string dump_state;
  std::string dist_out;
  int dist_grid = 16;
};

struct SweepOptions {
  std::string family;
  std::vector<std::string> ranges;  // each "name=start:stop:steps"
  std::string measures;
};

struct BellSimOptions {
  std::string state_path;
  std::string family_inline;
  std::int64_t shots = 0;
};

int run_compute(const GlobalOptions& global, const ComputeOptions& opts);
int run_sweep(const GlobalOptions& global, const SweepOptions& opts);
int run_validate(const GlobalOptions& global);
int run_bell_sim(const GlobalOptions& global, const BellSimOptions& opts);

}  // namespace qtool
