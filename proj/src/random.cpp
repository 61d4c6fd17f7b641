#include "fkg/random.hpp"

namespace fkg {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial_index) {
  return splitmix64(seed + (trial_index + 1) * 0x9E3779B97F4A7C15ull);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

Rational Rng::rational(std::int64_t num_lo, std::int64_t num_hi, std::int64_t den_hi) {
  const std::int64_t num = uniform(num_lo, num_hi);
  const std::int64_t den = uniform(1, den_hi);
  Rational out{Integer(std::to_string(num)), Integer(std::to_string(den))};
  out.canonicalize();
  return out;
}

}  // namespace fkg
