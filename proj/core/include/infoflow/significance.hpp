#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoflow/flow_network.hpp"
#include "infoflow/series.hpp"
#include "infoflow/topology.hpp"

namespace infoflow {

// Plug-in transfer entropy j -> i on one symbol series, evaluated directly
// from window counts so the source column can be swapped for surrogates.
// Agrees with transfer_entropy(fit_mle(count_windows(...))) up to rounding.
class TransferStatistic {
 public:
  // Throws SelfPair, IndexOutOfRange, SeriesTooShort, and SystemTooLarge when
  // the window tuple space exceeds JointTable::kDenseCellLimit.
  TransferStatistic(const SymbolSeries& symbols, std::size_t source, std::size_t target,
                    std::size_t order, std::size_t lag, Conditioning mode);

  double observed() const;
  // Statistic with the source column circularly shifted: s'[t] = s[(t + offset) mod L].
  double shifted(std::size_t offset) const;
  std::size_t length() const noexcept { return circular_codes_.size(); }

 private:
  std::vector<std::uint32_t> circular_codes_;
  std::vector<std::size_t> window_ends_;  // valid window times t
  std::vector<std::uint64_t> base_codes_;  // (conditioning, target present) per window
  std::uint64_t source_arity_;
  std::uint64_t present_cells_;
  std::uint64_t condition_cells_;
  std::uint64_t source_cells_;
};

struct NullModel {
  std::string statistic_name;
  std::vector<double> samples;
  double mean = 0.0;
  double variance = 0.0;
  // Method-of-moments gamma fit; both zero when not fitted.
  double gamma_shape = 0.0;
  double gamma_scale = 0.0;

  std::size_t n_surrogates() const noexcept { return samples.size(); }
  bool fitted() const noexcept { return gamma_shape > 0.0 && gamma_scale > 0.0; }
  // Zero sample variance: decisions fall back to the max sample.
  bool degenerate() const noexcept { return !samples.empty() && variance == 0.0; }
};

inline constexpr std::size_t kMinSurrogates = 20;
inline constexpr std::size_t kDefaultSurrogates = 200;
inline constexpr double kDefaultAlpha = 0.01;
// Statistics closer than this count as ties in the empirical p-value.
inline constexpr double kTieTolerance = 1e-12;

// Throws InvalidArgument below kMinSurrogates samples.
NullModel fit_null(std::string statistic_name, std::vector<double> samples);

// Circular-shift surrogates of the source column with offsets uniform in
// [L/4, 3L/4]; surrogate k draws from stream {k} of `seed`.
NullModel surrogate_null(const SymbolSeries& symbols, std::size_t source, std::size_t target,
                         std::size_t order, std::size_t lag, Conditioning mode,
                         std::size_t n_surrogates, std::uint64_t seed);
NullModel surrogate_null(const TransferStatistic& statistic, std::string name,
                         std::size_t n_surrogates, std::uint64_t seed);

enum class PValueMethod { kEmpirical, kGamma };

// EMPIRICAL: (1 + #{samples >= observed}) / (1 + n). GAMMA: upper tail of the
// fitted gamma; a degenerate null gives 0 above the max sample and 1
// otherwise. Throws UnfittedNull on an empty or unfittable null.
double p_value(const NullModel& null, double observed, PValueMethod method = PValueMethod::kEmpirical);

struct PairResult {
  std::size_t from = 0;
  std::size_t to = 0;
  double statistic_bits = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

struct InferenceReport {
  DependencyGraph graph;
  // Ordered by source, then target.
  std::vector<PairResult> pairs;
};

struct InferenceOptions {
  std::size_t order = 3;
  std::size_t lag = 1;
  Conditioning mode = Conditioning::kMultivariate;
  double alpha = kDefaultAlpha;
  std::size_t n_surrogates = kDefaultSurrogates;
  PValueMethod method = PValueMethod::kEmpirical;
};

// Tests every directed pair; edge j -> i iff p <= alpha. Pair k (in report
// order) uses stream {k} of `seed`. Pairs run on parallel_for workers.
InferenceReport infer_graph(const SymbolSeries& symbols, const InferenceOptions& options,
                            std::uint64_t seed);

struct Confusion {
  std::size_t true_pos = 0;
  std::size_t false_pos = 0;
  std::size_t true_neg = 0;
  std::size_t false_neg = 0;
};

struct InferenceScore {
  double pair_accuracy = 0.0;
  double case_accuracy = 0.0;
  Confusion confusion;
  std::size_t n_cases = 0;
  std::size_t n_pairs = 0;
  std::size_t correct_cases = 0;
  std::size_t correct_pairs = 0;
};

// Throws ShapeMismatch on unequal list lengths or differing n_vars and
// InvalidArgument on empty lists.
InferenceScore score_inference(std::span<const DependencyGraph> estimated,
                               std::span<const DependencyGraph> truth);

void to_json(nlohmann::json& j, const PairResult& r);
void to_json(nlohmann::json& j, const InferenceReport& r);
void to_json(nlohmann::json& j, const InferenceScore& s);
void to_json(nlohmann::json& j, const NullModel& n);

}  // namespace infoflow
