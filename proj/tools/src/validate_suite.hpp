#pragma once

#include <cstdint>
#include <iosfwd>

namespace qtool {

enum class ValidateLevel {
  Quick,   // reduced sample counts, finishes well under half a minute
  Full,    // every invariant at full sample counts
  Oracle,  // Full plus the brute-force cross-checks
};

// Runs the named invariant checks of every library module, printing one
// [PASS]/[FAIL] line per check plus a summary. Returns the failure count.
int run_validate_suite(ValidateLevel level, std::uint64_t seed,
                       std::ostream& out);

}  // namespace qtool
