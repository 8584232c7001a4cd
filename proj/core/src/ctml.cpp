#include "infoflow/ctml.hpp"

#include <cmath>

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

double tent_map(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(Errc::kOutOfDomain, "tent map argument outside [0, 1]");
  return x < 0.5 ? 2.0 * x : 2.0 - 2.0 * x;
}

RealSeries ctml_generate(const CtmlConfig& config) {
  const std::size_t n = config.n_vars();
  if (n == 0) throw Error(Errc::kInvalidArgument, "CTML needs at least one variable");
  if (config.epsilon < 0.0 || config.noise_amplitude < 0.0 || config.dither < 0.0) {
    throw Error(Errc::kInvalidArgument, "epsilon, noise and dither must be nonnegative");
  }
  if (config.steps < 2) throw Error(Errc::kSeriesTooShort, "need at least two steps");

  std::vector<Rng> noise;
  std::vector<Rng> dither;
  std::vector<double> x(n);
  for (std::size_t v = 0; v < n; ++v) {
    x[v] = Rng(derive_seed(config.seed, {v, 0})).uniform01();
    noise.emplace_back(derive_seed(config.seed, {v, 1}));
    dither.emplace_back(derive_seed(config.seed, {v, 2}));
  }
  std::vector<std::vector<std::size_t>> sources(n);
  for (const auto& [from, to] : config.topology.edges()) sources[to].push_back(from);

  std::vector<std::vector<double>> columns(n, std::vector<double>(config.steps));
  std::vector<double> next(n);
  const std::size_t total = config.burn_in + config.steps;
  for (std::size_t t = 0; t < total; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double eta = config.noise_amplitude > 0.0 ? config.noise_amplitude * noise[i].uniform01() : 0.0;
      double num = x[i] + eta;
      for (std::size_t j : sources[i]) num += config.epsilon * x[j];
      const double den = 1.0 + config.epsilon * static_cast<double>(sources[i].size()) + eta;
      double y = tent_map(std::min(1.0, num / den));
      if (config.dither > 0.0) {
        const double d = config.dither * dither[i].uniform01();
        y = y < 0.5 ? y + d : y - d;
      }
      next[i] = y;
    }
    x.swap(next);
    if (t >= config.burn_in) {
      for (std::size_t i = 0; i < n; ++i) columns[i][t - config.burn_in] = x[i];
    }
  }
  return RealSeries(std::move(columns));
}

}  // namespace infoflow
