#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "infoflow/series.hpp"

namespace infoflow {

struct LorenzParams {
  double sigma = 10.0;
  double rho = 28.0;
  double beta = 8.0 / 3.0;
  // State at t = 0 before the random perturbation is added.
  std::array<double, 3> initial{1.0, 0.5, 0.0};
  // Each coordinate gets an independent U[0, perturbation) offset.
  double perturbation = 0.01;
  // Samples cover [t0, t1]; t < t0 is discarded as transient.
  double t0 = 50.0;
  double t1 = 2050.0;
  double dt_integrate = 1e-3;
};

std::array<double, 3> lorenz_derivative(const LorenzParams& p, const std::array<double, 3>& s) noexcept;
// One classical fourth-order Runge-Kutta step.
std::array<double, 3> lorenz_rk4_step(const LorenzParams& p, const std::array<double, 3>& s, double h) noexcept;

// Fixed-step RK4 from t = 0, linear interpolation onto t0, t0 + dt, ... <= t1.
// When one trajectory yields fewer than n_samples points, further
// trajectories with fresh perturbations (stream k of `seed`) are appended as
// separate segments; the total is truncated to n_samples. Columns are x, y, z.
// Throws InvalidArgument on bad parameters and DivergedTrajectory on any
// non-finite state.
RealSeries lorenz_generate(const LorenzParams& params, double resample_dt, std::size_t n_samples,
                           std::uint64_t seed);

}  // namespace infoflow
