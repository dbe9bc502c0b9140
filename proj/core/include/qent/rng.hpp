#pragma once

#include <cstdint>

namespace qent {

/// Seed for any randomized operation. Equal seeds give bit-identical output
/// on every platform; the generator below is fully specified so golden files
/// stay valid across standard libraries.
struct RngSeed {
  std::uint64_t value = 0;
};

/// SplitMix64 stream (Steele, Lea & Flood 2014). State advances by the
/// 64-bit golden-ratio constant and each output is the mixed state:
///
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Deliberately implemented in-repo instead of <random>: the standard
/// distributions are not bit-reproducible across library vendors, and every
/// derived quantity below (uniforms, Gaussians, categorical draws) is part
/// of the repository's golden-file contract.
class SplitMix64 {
 public:
  explicit SplitMix64(RngSeed seed) : state_(seed.value) {}

  std::uint64_t next_u64();

  /// Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double next_double();

  /// Uniform on (0, 1]: (top 53 bits + 1) scaled by 2^-53. Safe under log().
  double next_double_positive();

  /// Standard normal via Box-Muller. Draws u1 from (0,1], u2 from [0,1),
  /// returns sqrt(-2 ln u1) cos(2 pi u2) and caches the sine partner for the
  /// next call.
  double next_gaussian();

 private:
  std::uint64_t state_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

/// Decorrelated child seed for sub-stream `index` of `seed`: the SplitMix64
/// output function applied to seed + (index + 1) * 0x9E3779B97F4A7C15.
/// Restarts, sampled shot batches, and golden-file state lists each consume
/// their own child stream so inserting a draw in one place never shifts
/// another.
RngSeed derive_stream(RngSeed seed, std::uint64_t index);

}  // namespace qent
