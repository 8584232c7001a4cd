#include "infoflow/rng.hpp"

#include <cmath>
#include <limits>

#include "infoflow/error.hpp"

namespace infoflow {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t s = mix64(master);
  for (std::uint64_t id : path) s = mix64(s ^ mix64(id + 1));
  return s;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "Rng::below requires n > 0");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

double Rng::exponential() {
  // 1 - u lies in (0, 1], so the log is finite.
  return -std::log(1.0 - uniform01());
}

}  // namespace infoflow
