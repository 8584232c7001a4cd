#pragma once

#include <cstddef>
#include <cstdint>

#include "infoflow/series.hpp"
#include "infoflow/topology.hpp"

namespace infoflow {

// 2x below 1/2, 2 - 2x otherwise. Throws OutOfDomain outside [0, 1].
double tent_map(double x);

struct CtmlConfig {
  DependencyGraph topology{3};
  double epsilon = 0.2;
  // Noise eta ~ U[0, r), shared by numerator and denominator of the update.
  double noise_amplitude = 0.0;
  std::size_t steps = 100000;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 0;
  // Adds a uniform offset below this size after each tent-map step, pointed
  // into [0, 1]. In binary floating point an undisturbed tent orbit loses one
  // mantissa bit per step and lands on 0 within ~55 steps; the offset keeps
  // the low bits supplied. 0 disables it.
  double dither = 0x1.0p-52;

  std::size_t n_vars() const noexcept { return topology.n_vars(); }
};

// x_i <- f((x_i + eps * sum_j d_ji x_j + eta) / (1 + eps * sum_j d_ji + eta)),
// d_ji = topology.edge(j, i). Initial states are U[0, 1). Streams: initial
// state {v, 0}, noise {v, 1}, dither {v, 2} under config.seed.
RealSeries ctml_generate(const CtmlConfig& config);

}  // namespace infoflow
