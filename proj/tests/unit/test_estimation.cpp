#include <gtest/gtest.h>

#include "infoflow/estimation.hpp"
#include "infoflow/rng.hpp"
#include "test_util.hpp"

using namespace infoflow;
using testutil::expect_errc;

namespace {

SymbolSeries coin_pair(std::size_t length, std::uint64_t seed, bool copy) {
  Rng rng(seed);
  std::vector<Symbol> x(length), y(length);
  for (std::size_t t = 0; t < length; ++t) {
    x[t] = static_cast<Symbol>(rng.below(2));
    y[t] = copy ? (t == 0 ? 0 : x[t - 1]) : static_cast<Symbol>(rng.below(2));
  }
  return SymbolSeries({x, y}, {2, 2}, {"x", "y"});
}

}  // namespace

TEST(SymbolizeMedian, Examples) {
  EXPECT_EQ(symbolize_median(RealSeries({{1, 2, 3, 4}})).symbols.column(0), (std::vector<Symbol>{0, 0, 1, 1}));
  EXPECT_EQ(symbolize_median(RealSeries({{0, 1, 0, 1}})).symbols.column(0), (std::vector<Symbol>{0, 1, 0, 1}));
  const Symbolization constant = symbolize_median(RealSeries({{5, 5, 5, 5}, {1, 2, 3, 4}}));
  EXPECT_EQ(constant.symbols.column(0), (std::vector<Symbol>{1, 1, 1, 1}));
  EXPECT_EQ(constant.constant_variables, (std::vector<std::size_t>{0}));
}

TEST(SymbolizeQuantile, Examples) {
  const RealSeries ramp({{0, 1, 2, 3, 4, 5, 6, 7}});
  EXPECT_EQ(symbolize_quantile(ramp, 4).symbols.column(0), (std::vector<Symbol>{0, 0, 1, 1, 2, 2, 3, 3}));
  EXPECT_EQ(symbolize_quantile(ramp, 4).symbols.arities(), (std::vector<std::size_t>{4}));
  const RealSeries data({{3.2, -1, 7, 0.5, 2, 2, 9}});
  EXPECT_EQ(symbolize_quantile(data, 2).symbols.column(0), symbolize_median(data).symbols.column(0));
  expect_errc(Errc::kInvalidArgument, [&] { symbolize_quantile(data, 1); });
}

TEST(SymbolizeQuantile, KeepsNamesAndSegments) {
  const RealSeries s({{1, 2, 3, 4}}, {"v"}, {2, 2});
  const auto out = symbolize_quantile(s, 2).symbols;
  EXPECT_EQ(out.names(), s.names());
  EXPECT_EQ(out.segments(), s.segments());
}

TEST(CountWindows, HandEnumeration) {
  const SymbolSeries s({{0, 1, 0, 1, 0}}, {2});
  const WindowCounts c = count_windows(s, 1, 1);
  EXPECT_EQ(c.total_windows, 4u);
  ASSERT_EQ(c.counts.size(), 2u);
  // axes (present, past)
  for (const auto& [code, n] : c.counts) {
    const auto t = c.decode(code);
    EXPECT_NE(t[0], t[1]);
    EXPECT_EQ(n, 2u);
  }
}

TEST(CountWindows, OrderZeroIsUnigram) {
  const SymbolSeries s({{0, 1, 1, 1}}, {2});
  const WindowCounts c = count_windows(s, 0, 1);
  EXPECT_EQ(c.total_windows, 4u);
  EXPECT_EQ(c.counts.at(1), 3u);
}

TEST(CountWindows, TooShortAndSegments) {
  const SymbolSeries s({{0, 1, 0}}, {2});
  expect_errc(Errc::kSeriesTooShort, [&] { count_windows(s, 3, 1); });
  expect_errc(Errc::kSeriesTooShort, [&] { count_windows(s, 1, 3); });
  // segments {3, 3}: windows of span 2 fit once per segment
  const SymbolSeries seg({{0, 1, 0, 1, 1, 1}}, {2}, {}, {3, 3});
  EXPECT_EQ(count_windows(seg, 2, 1).total_windows, 2u);
  EXPECT_EQ(count_windows(seg, 1, 2).total_windows, 2u);
}

TEST(CountWindows, MatchesBruteForceWithLag) {
  Rng rng(3);
  std::vector<Symbol> a(500), b(500);
  for (auto& x : a) x = static_cast<Symbol>(rng.below(3));
  for (auto& x : b) x = static_cast<Symbol>(rng.below(2));
  const SymbolSeries s({a, b}, {3, 2});
  const WindowCounts c = count_windows(s, 2, 3);
  std::map<std::vector<std::size_t>, std::uint64_t> brute;
  for (std::size_t t = 6; t < 500; ++t) {
    brute[{a[t], b[t], a[t - 3], b[t - 3], a[t - 6], b[t - 6]}]++;
  }
  std::map<std::vector<std::size_t>, std::uint64_t> got;
  for (const auto& [code, n] : c.counts) got[c.decode(code)] = n;
  EXPECT_EQ(got, brute);
  EXPECT_EQ(c.total_windows, 494u);
}

TEST(FitMle, Normalizes) {
  const ProcessModel m = fit_mle(count_windows(SymbolSeries({{0, 1, 0, 1, 0}}, {2}), 1, 1));
  EXPECT_DOUBLE_EQ(m.window_table().mass(std::vector<std::size_t>{1, 0}), 0.5);
  EXPECT_DOUBLE_EQ(m.window_table().mass(std::vector<std::size_t>{0, 1}), 0.5);
  const ProcessModel point = fit_mle(count_windows(SymbolSeries({{1, 1}}, {2}), 1, 1));
  EXPECT_DOUBLE_EQ(point.window_table().mass(std::vector<std::size_t>{1, 1}), 1.0);
}

TEST(FitMle, FairCoinEntropyRate) {
  Rng rng(11);
  std::vector<Symbol> x(100000);
  for (auto& v : x) v = static_cast<Symbol>(rng.below(2));
  const double h = entropy_rate(fit_mle(count_windows(SymbolSeries({x}, {2}), 1, 1)), 0);
  EXPECT_GE(h, 0.99);
  EXPECT_LE(h, 1.0);
}

TEST(EstimateNetwork, CopyProcess) {
  const InfoNetwork n = estimate_network(coin_pair(100000, 5, true), 1, 1, Conditioning::kMultivariate);
  EXPECT_NEAR(n.transfer[0][1], 1.0, 0.01);
  EXPECT_LT(n.transfer[1][0], 0.001);
}

TEST(EstimateNetwork, RealInputUsesQuantileBins) {
  Rng rng(2);
  std::vector<double> x(2000), y(2000);
  for (std::size_t t = 0; t < x.size(); ++t) {
    x[t] = rng.uniform01();
    y[t] = t ? x[t - 1] : 0.5;
  }
  const InfoNetwork n = estimate_network(RealSeries({x, y}), 1, 1, 4, Conditioning::kPairwise);
  EXPECT_NEAR(n.transfer[0][1], 2.0, 0.05);
}

TEST(SampleProcess, ReproducesCopyStructure) {
  const ProcessModel model = ProcessModel::from_weights(2, 1, 1, {2, 2}, [](std::span<const std::size_t> t) {
    return t[1] == t[2] ? 1.0 : 0.0;
  });
  const SymbolSeries s = sample_process(model, 5000, 9);
  for (std::size_t t = 1; t < s.length(); ++t) EXPECT_EQ(s.column(1)[t], s.column(0)[t - 1]);
  const SymbolSeries again = sample_process(model, 5000, 9);
  EXPECT_EQ(again.columns(), s.columns());
}
