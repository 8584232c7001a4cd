#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "infoflow/flow_network.hpp"
#include "infoflow/process_model.hpp"
#include "infoflow/series.hpp"

namespace infoflow {

// Symbols plus the variables whose values were all identical; those columns
// are still emitted (every value sits at the median, so every symbol is the
// top bin).
struct Symbolization {
  SymbolSeries symbols;
  std::vector<std::size_t> constant_variables;
};

// v >= median -> 1, else 0. Even-length median is the mean of the two
// central order statistics.
Symbolization symbolize_median(const RealSeries& series);
// Equal-frequency bins at the k/m quantiles (linear interpolation between
// order statistics); the symbol is the number of cut points <= v.
// Throws InvalidArgument for m < 2.
Symbolization symbolize_quantile(const RealSeries& series, std::size_t m);

struct WindowCounts {
  std::size_t n_vars = 0;
  std::size_t order = 0;
  std::size_t lag = 0;
  // Window axes in ProcessModel order (offset-major).
  std::vector<AxisLabel> axes;
  std::vector<std::size_t> axis_arities;
  // Mixed-radix window code (axis 0 most significant) -> count.
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t total_windows = 0;

  std::vector<std::size_t> decode(std::uint64_t code) const;
};

// Every window whose span lies inside one segment is counted once. Order 0
// gives unigram counts. Throws SeriesTooShort when no window fits.
WindowCounts count_windows(const SymbolSeries& symbols, std::size_t order, std::size_t lag);

// Multinomial maximum-likelihood window table. Throws ZeroTotalCount.
ProcessModel fit_mle(const WindowCounts& counts);

InfoNetwork estimate_network(const SymbolSeries& symbols, std::size_t order, std::size_t lag,
                             Conditioning mode);
// Quantile symbolization with `bins` symbols per variable first.
InfoNetwork estimate_network(const RealSeries& series, std::size_t order, std::size_t lag,
                             std::size_t bins, Conditioning mode);

// Draws a lag-1 sample path from the model's conditional p(present | past),
// seeded from the marginal of the past window. Throws InvalidArgument for
// lag != 1 and ZeroTotalCount if a reached past has zero mass.
SymbolSeries sample_process(const ProcessModel& model, std::size_t length, std::uint64_t seed);

}  // namespace infoflow
