#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "infoflow/estimation.hpp"
#include "infoflow/rng.hpp"
#include "infoflow/significance.hpp"
#include "test_util.hpp"

using namespace infoflow;
using testutil::expect_errc;

namespace {

// x i.i.d.; y copies x one step later with probability 1 - flip; z i.i.d.
SymbolSeries triple(std::size_t length, std::uint64_t seed, double flip = 0.0) {
  Rng rng(seed);
  std::vector<Symbol> x(length), y(length), z(length);
  for (std::size_t t = 0; t < length; ++t) {
    x[t] = static_cast<Symbol>(rng.below(2));
    z[t] = static_cast<Symbol>(rng.below(3));
    const Symbol prev = t ? x[t - 1] : 0;
    y[t] = rng.uniform01() < flip ? 1 - prev : prev;
  }
  return SymbolSeries({x, y, z}, {2, 2, 3}, {"x", "y", "z"});
}

std::vector<double> iota_samples(std::size_t n) {
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) s[k] = 0.01 * static_cast<double>(k + 1);
  return s;
}

}  // namespace

TEST(TransferStatistic, MatchesPlugInEstimate) {
  const SymbolSeries s = triple(3000, 1, 0.3);
  for (auto mode : {Conditioning::kPairwise, Conditioning::kMultivariate}) {
    for (std::size_t lag : {1, 2}) {
      const ProcessModel m = fit_mle(count_windows(s, 2, lag));
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
          if (i == j) continue;
          EXPECT_NEAR(TransferStatistic(s, j, i, 2, lag, mode).observed(), transfer_entropy(m, j, i, mode), 1e-12);
        }
      }
    }
  }
}

TEST(TransferStatistic, RespectsSegments) {
  const SymbolSeries whole = triple(1000, 2, 0.2);
  const SymbolSeries seg(whole.columns(), whole.arities(), whole.names(), {400, 600});
  const ProcessModel m = fit_mle(count_windows(seg, 1, 1));
  EXPECT_NEAR(TransferStatistic(seg, 0, 1, 1, 1, Conditioning::kMultivariate).observed(),
              transfer_entropy(m, 0, 1, Conditioning::kMultivariate), 1e-12);
}

TEST(TransferStatistic, ShiftMatchesRotatedColumn) {
  const SymbolSeries s = triple(777, 3, 0.1);
  const TransferStatistic stat(s, 0, 1, 2, 1, Conditioning::kMultivariate);
  for (std::size_t offset : {1, 200, 500}) {
    auto cols = s.columns();
    std::rotate(cols[0].begin(), cols[0].begin() + static_cast<std::ptrdiff_t>(offset), cols[0].end());
    const SymbolSeries rotated(cols, s.arities());
    EXPECT_NEAR(stat.shifted(offset), TransferStatistic(rotated, 0, 1, 2, 1, Conditioning::kMultivariate).observed(),
                1e-12);
  }
}

TEST(TransferStatistic, Errors) {
  const SymbolSeries s = triple(100, 1);
  expect_errc(Errc::kSelfPair, [&] { TransferStatistic(s, 1, 1, 1, 1, Conditioning::kPairwise); });
  expect_errc(Errc::kIndexOutOfRange, [&] { TransferStatistic(s, 0, 5, 1, 1, Conditioning::kPairwise); });
  expect_errc(Errc::kSeriesTooShort, [&] { TransferStatistic(s, 0, 1, 3, 40, Conditioning::kPairwise); });
}

TEST(FitNull, MomentsReproduced) {
  const auto samples = iota_samples(50);
  const NullModel n = fit_null("t", samples);
  EXPECT_TRUE(n.fitted());
  EXPECT_NEAR(n.gamma_shape * n.gamma_scale, n.mean, 1e-9);
  EXPECT_NEAR(n.gamma_shape * n.gamma_scale * n.gamma_scale, n.variance, 1e-9);
  EXPECT_NEAR(n.mean, 0.255, 1e-12);
  expect_errc(Errc::kInvalidArgument, [] { fit_null("t", iota_samples(19)); });
}

TEST(PValue, EmpiricalRules) {
  const NullModel n = fit_null("t", iota_samples(99));
  EXPECT_DOUBLE_EQ(p_value(n, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(p_value(n, 5.0), 1.0 / 100.0);
  EXPECT_DOUBLE_EQ(p_value(n, 0.99), 2.0 / 100.0);
  double prev = 1.0;
  for (double x = -0.1; x < 1.2; x += 0.003) {
    const double p = p_value(n, x);
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(PValue, GammaNearEmpiricalTailAtMean) {
  Rng rng(4);
  std::vector<double> samples(400);
  for (auto& s : samples) s = rng.exponential() + rng.exponential();
  const NullModel n = fit_null("t", samples);
  EXPECT_NEAR(p_value(n, n.mean, PValueMethod::kGamma), p_value(n, n.mean), 0.1);
  EXPECT_NEAR(p_value(n, 0.0, PValueMethod::kGamma), 1.0, 1e-12);
}

TEST(PValue, DegenerateAndUnfitted) {
  const NullModel flat = fit_null("t", std::vector<double>(30, 0.0));
  EXPECT_TRUE(flat.degenerate());
  EXPECT_EQ(p_value(flat, 0.0, PValueMethod::kGamma), 1.0);
  EXPECT_EQ(p_value(flat, 0.1, PValueMethod::kGamma), 0.0);
  EXPECT_DOUBLE_EQ(p_value(flat, 0.0), 1.0);
  expect_errc(Errc::kUnfittedNull, [] { p_value(NullModel{}, 0.1); });
}

TEST(SurrogateNull, CopyProcessBeatsEverySurrogate) {
  const SymbolSeries s = triple(5000, 6);
  const NullModel n = surrogate_null(s, 0, 1, 1, 1, Conditioning::kMultivariate, 100, 1);
  EXPECT_EQ(n.n_surrogates(), 100u);
  const double observed = TransferStatistic(s, 0, 1, 1, 1, Conditioning::kMultivariate).observed();
  EXPECT_GT(observed, *std::max_element(n.samples.begin(), n.samples.end()));
  EXPECT_DOUBLE_EQ(p_value(n, observed), 1.0 / 101.0);
}

TEST(SurrogateNull, ConstantSourceIsDegenerate) {
  auto cols = triple(500, 1).columns();
  std::fill(cols[0].begin(), cols[0].end(), 1);
  const SymbolSeries s(cols, {2, 2, 3});
  const NullModel n = surrogate_null(s, 0, 1, 1, 1, Conditioning::kPairwise, 30, 1);
  EXPECT_TRUE(n.degenerate());
  for (double v : n.samples) EXPECT_EQ(v, 0.0);
  expect_errc(Errc::kInvalidArgument, [&] { surrogate_null(s, 0, 1, 1, 1, Conditioning::kPairwise, 10, 1); });
}

TEST(SurrogateNull, FalsePositiveRateUnderIndependence) {
  constexpr std::size_t kTrials = 500;
  constexpr double kAlpha = 0.05;
  std::size_t rejections = 0;
  for (std::size_t trial = 0; trial < kTrials; ++trial) {
    const SymbolSeries s = triple(2000, 1000 + trial);
    const TransferStatistic stat(s, 2, 0, 1, 1, Conditioning::kMultivariate);
    const NullModel n = surrogate_null(stat, "t", 99, derive_seed(7, {trial}));
    if (p_value(n, stat.observed()) <= kAlpha) ++rejections;
  }
  EXPECT_LE(static_cast<double>(rejections) / kTrials, kAlpha + 0.02);
}

TEST(InferGraph, CopyEdgeOnly) {
  InferenceOptions o;
  o.order = 1;
  o.n_surrogates = 100;
  const InferenceReport r = infer_graph(triple(5000, 8), o, 3);
  EXPECT_EQ(r.graph, DependencyGraph(3, {{0, 1}}));
  ASSERT_EQ(r.pairs.size(), 6u);
  EXPECT_EQ(r.pairs[0].from, 0u);
  EXPECT_EQ(r.pairs[0].to, 1u);
  const nlohmann::json j = r;
  EXPECT_EQ(j["pairs"][0]["significant"], true);
}

TEST(InferGraph, AlphaOneGivesCompleteGraph) {
  InferenceOptions o;
  o.order = 1;
  o.alpha = 1.0;
  o.n_surrogates = 20;
  EXPECT_EQ(infer_graph(triple(500, 8), o, 3).graph.edge_count(), 6u);
}

TEST(InferGraph, ScheduleIndependent) {
  InferenceOptions o;
  o.order = 2;
  o.n_surrogates = 40;
  const SymbolSeries s = triple(3000, 9, 0.4);
  setenv("INFOFLOW_THREADS", "1", 1);
  const InferenceReport a = infer_graph(s, o, 11);
  setenv("INFOFLOW_THREADS", "4", 1);
  const InferenceReport b = infer_graph(s, o, 11);
  unsetenv("INFOFLOW_THREADS");
  ASSERT_EQ(a.pairs.size(), b.pairs.size());
  for (std::size_t k = 0; k < a.pairs.size(); ++k) {
    EXPECT_EQ(a.pairs[k].statistic_bits, b.pairs[k].statistic_bits);
    EXPECT_EQ(a.pairs[k].p_value, b.pairs[k].p_value);
  }
}

TEST(ScoreInference, Counting) {
  const auto truths = [] {
    std::vector<DependencyGraph> out;
    for (const auto& c : enumerate_topologies(3)) out.push_back(c.representative);
    return out;
  }();
  const InferenceScore perfect = score_inference(truths, truths);
  EXPECT_EQ(perfect.pair_accuracy, 1.0);
  EXPECT_EQ(perfect.case_accuracy, 1.0);

  auto one_off = truths;
  one_off[5].set_edge(0, 1, !one_off[5].edge(0, 1));
  const InferenceScore s = score_inference(one_off, truths);
  EXPECT_DOUBLE_EQ(s.pair_accuracy, 95.0 / 96.0);
  EXPECT_DOUBLE_EQ(s.case_accuracy, 15.0 / 16.0);
  const auto& c = s.confusion;
  EXPECT_EQ(c.true_pos + c.false_pos + c.true_neg + c.false_neg, 96u);

  const std::vector<DependencyGraph> empty(16, DependencyGraph(3));
  std::size_t edges = 0;
  for (const auto& g : truths) edges += g.edge_count();
  EXPECT_DOUBLE_EQ(score_inference(empty, truths).pair_accuracy, 1.0 - static_cast<double>(edges) / 96.0);
  EXPECT_EQ(score_inference(empty, truths).confusion.false_neg, edges);

  const std::vector<DependencyGraph> short_list(3, DependencyGraph(3));
  expect_errc(Errc::kShapeMismatch, [&] { score_inference(short_list, truths); });
  const std::vector<DependencyGraph> wrong_n(16, DependencyGraph(4));
  expect_errc(Errc::kShapeMismatch, [&] { score_inference(wrong_n, truths); });
}
