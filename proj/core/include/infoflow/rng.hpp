#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace infoflow {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

// Child seed for the stream addressed by `path` under `master`:
//   s = mix64(master); for each id: s = mix64(s ^ mix64(id + 1))
// Every random draw in the library comes from a stream derived this way
// (e.g. {pair, surrogate} or {case, variable}), so results do not depend on
// how work is scheduled across threads.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

// mt19937_64 with hand-rolled variate generation. The standard distributions
// are implementation-defined, so they are avoided to keep runs reproducible
// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Uniform integer on [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  // Standard exponential variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

}  // namespace infoflow
