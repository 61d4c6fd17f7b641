#pragma once

#include <cstdint>
#include <random>

#include "fkg/rational.hpp"

namespace fkg {

/// SplitMix64 finalizer. Used to derive per-trial seeds:
/// trial_seed(seed, i) = splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15).
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index);

/// Seeded integer source with a platform-independent output sequence.
///
/// std::mt19937_64 output is fixed by the standard; the distributions in
/// <random> are not, so bounded draws are done here by rejection sampling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// num/den with num drawn from [num_lo, num_hi] and den from [1, den_hi].
  Rational rational(std::int64_t num_lo, std::int64_t num_hi, std::int64_t den_hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fkg
