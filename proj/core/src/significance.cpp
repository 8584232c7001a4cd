#include "infoflow/significance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "infoflow/error.hpp"
#include "infoflow/parallel.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

namespace {

// Sum of c log2 c over a block of counts.
double clogc(std::uint64_t c) {
  return c > 1 ? static_cast<double>(c) * std::log2(static_cast<double>(c)) : 0.0;
}

}  // namespace

TransferStatistic::TransferStatistic(const SymbolSeries& symbols, std::size_t source,
                                     std::size_t target, std::size_t order, std::size_t lag,
                                     Conditioning mode)
{
  const std::size_t n = symbols.n_vars();
  if (source >= n || target >= n) throw Error(Errc::kIndexOutOfRange, "variable index out of range");
  if (source == target) throw Error(Errc::kSelfPair, "source and target must differ");
  if (order == 0 || lag == 0) throw Error(Errc::kInvalidArgument, "order and lag must be positive");

  const auto& source_column = symbols.column(source);
  source_arity_ = symbols.arities()[source];
  present_cells_ = symbols.arities()[target];
  source_cells_ = 1;
  for (std::size_t k = 0; k < order; ++k) source_cells_ *= source_arity_;

  std::vector<std::size_t> conditioners;
  for (std::size_t v = 0; v < n; ++v) {
    const bool keep = mode == Conditioning::kPairwise ? v == target : v != source;
    if (keep) conditioners.push_back(v);
  }
  condition_cells_ = 1;
  for (std::size_t v : conditioners) {
    for (std::size_t k = 0; k < order; ++k) {
      condition_cells_ *= symbols.arities()[v];
      if (condition_cells_ > JointTable::kDenseCellLimit) break;
    }
  }
  if (condition_cells_ > JointTable::kDenseCellLimit ||
      condition_cells_ * present_cells_ * source_cells_ > JointTable::kDenseCellLimit) {
    throw Error(Errc::kSystemTooLarge, "transfer entropy window space too large");
  }

  const std::size_t span = order * lag;
  std::size_t start = 0;
  for (std::size_t seg : symbols.segments()) {
    for (std::size_t t = start + span; t < start + seg; ++t) {
      std::uint64_t c = 0;
      for (std::size_t v : conditioners) {
        for (std::size_t k = 1; k <= order; ++k) c = c * symbols.arities()[v] + symbols.column(v)[t - k * lag];
      }
      window_ends_.push_back(t);
      base_codes_.push_back(c * present_cells_ + symbols.column(target)[t]);
    }
    start += seg;
  }
  if (window_ends_.empty()) throw Error(Errc::kSeriesTooShort, "no complete window in the series");

  // Source past code at every u with indices taken mod L, so a circular
  // shift by `offset` reads entry (t + offset) mod L.
  const std::size_t L = source_column.size();
  circular_codes_.resize(L);
  for (std::size_t u = 0; u < L; ++u) {
    std::uint64_t c = 0;
    for (std::size_t k = 1; k <= order; ++k) {
      c = c * source_arity_ + source_column[(u + L * order * lag - k * lag) % L];
    }
    circular_codes_[u] = static_cast<std::uint32_t>(c);
  }
}

double TransferStatistic::shifted(std::size_t offset) const {
  const std::size_t L = circular_codes_.size();
  offset %= L;
  // Joint code = ((condition * present_cells) + present) * source_cells + source.
  const std::uint64_t cells = condition_cells_ * present_cells_ * source_cells_;
  std::vector<std::uint64_t> hist(cells, 0);
  for (std::size_t w = 0; w < base_codes_.size(); ++w) {
    std::size_t u = window_ends_[w] + offset;
    if (u >= L) u -= L;
    ++hist[base_codes_[w] * source_cells_ + circular_codes_[u]];
  }

  // I(A; S | C) = H(A,C) + H(S,C) - H(C) - H(A,S,C); with plug-in entropies
  // H = log2 W - (1/W) sum c log2 c the log2 W terms cancel.
  double s_acs = 0.0;
  double s_ac = 0.0;
  double s_sc = 0.0;
  double s_c = 0.0;
  std::vector<std::uint64_t> sc(source_cells_);
  for (std::uint64_t c = 0; c < condition_cells_; ++c) {
    std::fill(sc.begin(), sc.end(), 0);
    std::uint64_t c_total = 0;
    for (std::uint64_t a = 0; a < present_cells_; ++a) {
      const std::uint64_t* row = hist.data() + (c * present_cells_ + a) * source_cells_;
      std::uint64_t ac = 0;
      for (std::uint64_t s = 0; s < source_cells_; ++s) {
        s_acs += clogc(row[s]);
        ac += row[s];
        sc[s] += row[s];
      }
      s_ac += clogc(ac);
      c_total += ac;
    }
    for (std::uint64_t v : sc) s_sc += clogc(v);
    s_c += clogc(c_total);
  }
  const double W = static_cast<double>(base_codes_.size());
  return (s_acs + s_c - s_ac - s_sc) / W;
}

double TransferStatistic::observed() const { return shifted(0); }

NullModel fit_null(std::string statistic_name, std::vector<double> samples) {
  if (samples.size() < kMinSurrogates) {
    throw Error(Errc::kInvalidArgument, "a null needs at least " + std::to_string(kMinSurrogates) + " samples");
  }
  NullModel null;
  null.statistic_name = std::move(statistic_name);
  const double n = static_cast<double>(samples.size());
  null.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double s : samples) ss += (s - null.mean) * (s - null.mean);
  null.variance = ss / n;
  if (null.variance > 0.0 && null.mean > 0.0) {
    null.gamma_shape = null.mean * null.mean / null.variance;
    null.gamma_scale = null.variance / null.mean;
  }
  null.samples = std::move(samples);
  return null;
}

NullModel surrogate_null(const TransferStatistic& statistic, std::string name,
                         std::size_t n_surrogates, std::uint64_t seed) {
  if (n_surrogates < kMinSurrogates) {
    throw Error(Errc::kInvalidArgument, "at least " + std::to_string(kMinSurrogates) + " surrogates required");
  }
  const std::size_t L = statistic.length();
  if (L < 4) throw Error(Errc::kSeriesTooShort, "series too short for circular-shift surrogates");
  const std::size_t lo = L / 4;
  const std::size_t hi = 3 * L / 4;
  std::vector<double> samples(n_surrogates);
  for (std::size_t k = 0; k < n_surrogates; ++k) {
    Rng rng(derive_seed(seed, {k}));
    samples[k] = statistic.shifted(lo + static_cast<std::size_t>(rng.below(hi - lo + 1)));
  }
  return fit_null(std::move(name), std::move(samples));
}

NullModel surrogate_null(const SymbolSeries& symbols, std::size_t source, std::size_t target,
                         std::size_t order, std::size_t lag, Conditioning mode,
                         std::size_t n_surrogates, std::uint64_t seed) {
  const TransferStatistic statistic(symbols, source, target, order, lag, mode);
  const std::string name = std::string(mode == Conditioning::kPairwise ? "pte" : "mte") + "(" +
                           std::to_string(source) + "->" + std::to_string(target) + ")";
  return surrogate_null(statistic, name, n_surrogates, seed);
}

double p_value(const NullModel& null, double observed, PValueMethod method) {
  if (null.samples.empty()) throw Error(Errc::kUnfittedNull, "null model has no samples");
  if (method == PValueMethod::kEmpirical) {
    const auto exceed = std::count_if(null.samples.begin(), null.samples.end(),
                                      [&](double s) { return s >= observed - kTieTolerance; });
    return static_cast<double>(1 + exceed) / static_cast<double>(1 + null.samples.size());
  }
  if (null.degenerate()) {
    const double max = *std::max_element(null.samples.begin(), null.samples.end());
    return observed > max + kTieTolerance ? 0.0 : 1.0;
  }
  if (!null.fitted()) throw Error(Errc::kUnfittedNull, "gamma fit unavailable for this null");
  if (observed <= 0.0) return 1.0;
  return boost::math::gamma_q(null.gamma_shape, observed / null.gamma_scale);
}

InferenceReport infer_graph(const SymbolSeries& symbols, const InferenceOptions& options,
                            std::uint64_t seed) {
  const std::size_t n = symbols.n_vars();
  InferenceReport report{DependencyGraph(n), {}};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j) report.pairs.push_back({j, i, 0.0, 1.0, false});
    }
  }
  parallel_for(report.pairs.size(), [&](std::size_t k) {
    PairResult& r = report.pairs[k];
    const TransferStatistic statistic(symbols, r.from, r.to, options.order, options.lag, options.mode);
    r.statistic_bits = statistic.observed();
    const NullModel null = surrogate_null(statistic, "", options.n_surrogates, derive_seed(seed, {k}));
    r.p_value = p_value(null, r.statistic_bits, options.method);
    r.significant = r.p_value <= options.alpha;
  });
  for (const PairResult& r : report.pairs) {
    if (r.significant) report.graph.set_edge(r.from, r.to);
  }
  return report;
}

InferenceScore score_inference(std::span<const DependencyGraph> estimated,
                               std::span<const DependencyGraph> truth) {
  if (estimated.size() != truth.size()) throw Error(Errc::kShapeMismatch, "case lists differ in length");
  if (truth.empty()) throw Error(Errc::kInvalidArgument, "no cases to score");
  InferenceScore score;
  score.n_cases = truth.size();
  for (std::size_t c = 0; c < truth.size(); ++c) {
    const std::size_t n = truth[c].n_vars();
    if (estimated[c].n_vars() != n) throw Error(Errc::kShapeMismatch, "graphs differ in n_vars");
    bool all = true;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j) continue;
        const bool e = estimated[c].edge(j, i);
        const bool t = truth[c].edge(j, i);
        ++score.n_pairs;
        if (e == t) {
          ++score.correct_pairs;
          ++(t ? score.confusion.true_pos : score.confusion.true_neg);
        } else {
          all = false;
          ++(e ? score.confusion.false_pos : score.confusion.false_neg);
        }
      }
    }
    score.correct_cases += all ? 1 : 0;
  }
  score.pair_accuracy = score.n_pairs ? static_cast<double>(score.correct_pairs) / static_cast<double>(score.n_pairs) : 1.0;
  score.case_accuracy = static_cast<double>(score.correct_cases) / static_cast<double>(score.n_cases);
  return score;
}

void to_json(nlohmann::json& j, const PairResult& r) {
  j = nlohmann::json{{"from", r.from}, {"to", r.to}, {"statistic_bits", r.statistic_bits},
                     {"p_value", r.p_value}, {"significant", r.significant}};
}

void to_json(nlohmann::json& j, const InferenceReport& r) {
  j = nlohmann::json{{"graph", r.graph}, {"pairs", r.pairs}};
}

void to_json(nlohmann::json& j, const InferenceScore& s) {
  j = nlohmann::json{{"pair_accuracy", s.pair_accuracy},
                     {"case_accuracy", s.case_accuracy},
                     {"confusion",
                      {{"true_pos", s.confusion.true_pos},
                       {"false_pos", s.confusion.false_pos},
                       {"true_neg", s.confusion.true_neg},
                       {"false_neg", s.confusion.false_neg}}},
                     {"n_cases", s.n_cases},
                     {"n_pairs", s.n_pairs},
                     {"correct_cases", s.correct_cases},
                     {"correct_pairs", s.correct_pairs}};
}

void to_json(nlohmann::json& j, const NullModel& n) {
  j = nlohmann::json{{"statistic_name", n.statistic_name}, {"n_surrogates", n.n_surrogates()},
                     {"mean", n.mean}, {"variance", n.variance}, {"gamma_shape", n.gamma_shape},
                     {"gamma_scale", n.gamma_scale}, {"samples", n.samples}};
}

}  // namespace infoflow
