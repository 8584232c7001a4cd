#include "infoflow/lorenz.hpp"

#include <algorithm>
#include <cmath>

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

using State = std::array<double, 3>;

State lorenz_derivative(const LorenzParams& p, const State& s) noexcept {
  return {p.sigma * (s[1] - s[0]), s[0] * (p.rho - s[2]) - s[1], s[0] * s[1] - p.beta * s[2]};
}

namespace {

State axpy(const State& s, double a, const State& k) noexcept {
  return {s[0] + a * k[0], s[1] + a * k[1], s[2] + a * k[2]};
}

}  // namespace

State lorenz_rk4_step(const LorenzParams& p, const State& s, double h) noexcept {
  const State k1 = lorenz_derivative(p, s);
  const State k2 = lorenz_derivative(p, axpy(s, h / 2, k1));
  const State k3 = lorenz_derivative(p, axpy(s, h / 2, k2));
  const State k4 = lorenz_derivative(p, axpy(s, h, k3));
  State out;
  for (std::size_t d = 0; d < 3; ++d) out[d] = s[d] + h / 6 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d]);
  return out;
}

RealSeries lorenz_generate(const LorenzParams& params, double resample_dt, std::size_t n_samples,
                           std::uint64_t seed) {
  if (!(params.dt_integrate > 0.0) || !(params.t1 > params.t0) || params.t0 < 0.0 ||
      !(resample_dt > 0.0) || params.perturbation < 0.0) {
    throw Error(Errc::kInvalidArgument, "invalid Lorenz integration parameters");
  }
  if (n_samples < 2) throw Error(Errc::kSeriesTooShort, "need at least two samples");

  const double h = params.dt_integrate;
  const auto per_trajectory =
      static_cast<std::size_t>(std::floor((params.t1 - params.t0) / resample_dt + 1e-9)) + 1;
  std::vector<std::vector<double>> columns(3);
  for (auto& c : columns) c.reserve(n_samples);
  std::vector<std::size_t> segments;

  for (std::uint64_t k = 0; columns[0].size() < n_samples; ++k) {
    Rng rng(derive_seed(seed, {k}));
    State s = params.initial;
    for (double& v : s) v += params.perturbation * rng.uniform01();

    const std::size_t want = std::min(per_trajectory, n_samples - columns[0].size());
    std::size_t produced = 0;
    std::size_t step = 0;
    double t = 0.0;
    while (produced < want) {
      const State next = lorenz_rk4_step(params, s, h);
      if (!std::isfinite(next[0]) || !std::isfinite(next[1]) || !std::isfinite(next[2])) {
        throw Error(Errc::kDivergedTrajectory, "Lorenz state became non-finite");
      }
      const double t_next = static_cast<double>(++step) * h;
      while (produced < want) {
        const double tau = params.t0 + static_cast<double>(produced) * resample_dt;
        if (tau > t_next) break;
        const double w = (tau - t) / h;
        for (std::size_t d = 0; d < 3; ++d) columns[d].push_back(s[d] + w * (next[d] - s[d]));
        ++produced;
      }
      s = next;
      t = t_next;
    }
    segments.push_back(produced);
  }
  return RealSeries(std::move(columns), {"x", "y", "z"}, std::move(segments), resample_dt);
}

}  // namespace infoflow
