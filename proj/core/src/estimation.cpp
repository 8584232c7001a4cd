#include "infoflow/estimation.hpp"

#include <algorithm>
#include <unordered_map>

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

namespace {

// Type-7 sample quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
  const double h = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

Symbolization symbolize_quantile(const RealSeries& series, std::size_t m) {
  if (m < 2) throw Error(Errc::kInvalidArgument, "quantile symbolization needs at least 2 bins");
  std::vector<std::vector<Symbol>> columns;
  std::vector<std::size_t> constant;
  for (std::size_t i = 0; i < series.n_vars(); ++i) {
    const auto& x = series.column(i);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back()) constant.push_back(i);
    std::vector<double> cuts;
    for (std::size_t k = 1; k < m; ++k) {
      cuts.push_back(quantile(sorted, static_cast<double>(k) / static_cast<double>(m)));
    }
    std::vector<Symbol> col;
    col.reserve(x.size());
    for (double v : x) {
      col.push_back(static_cast<Symbol>(std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin()));
    }
    columns.push_back(std::move(col));
  }
  return {SymbolSeries(std::move(columns), std::vector<std::size_t>(series.n_vars(), m), series.names(),
                       series.segments()),
          std::move(constant)};
}

Symbolization symbolize_median(const RealSeries& series) { return symbolize_quantile(series, 2); }

std::vector<std::size_t> WindowCounts::decode(std::uint64_t code) const {
  std::vector<std::size_t> tuple(axis_arities.size());
  for (std::size_t a = axis_arities.size(); a-- > 0;) {
    tuple[a] = static_cast<std::size_t>(code % axis_arities[a]);
    code /= axis_arities[a];
  }
  return tuple;
}

WindowCounts count_windows(const SymbolSeries& symbols, std::size_t order, std::size_t lag) {
  if (lag == 0) throw Error(Errc::kInvalidArgument, "lag must be at least 1");
  const std::size_t n = symbols.n_vars();
  WindowCounts wc;
  wc.n_vars = n;
  wc.order = order;
  wc.lag = lag;
  wc.axes = ProcessModel::window_labels(n, order, lag);
  for (std::size_t k = 0; k <= order; ++k) {
    wc.axis_arities.insert(wc.axis_arities.end(), symbols.arities().begin(), symbols.arities().end());
  }
  const std::uint64_t cells = product_of_arities(wc.axis_arities);
  std::vector<std::uint64_t> stride(wc.axis_arities.size());
  std::uint64_t s = 1;
  for (std::size_t a = stride.size(); a-- > 0;) {
    stride[a] = s;
    s *= wc.axis_arities[a];
  }

  const bool dense = cells <= JointTable::kDenseCellLimit;
  std::vector<std::uint64_t> dense_counts(dense ? cells : 0);
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_counts;
  const std::size_t span = order * lag;
  std::size_t start = 0;
  for (std::size_t seg : symbols.segments()) {
    for (std::size_t t = start + span; t < start + seg; ++t) {
      std::uint64_t code = 0;
      for (std::size_t k = 0; k <= order; ++k) {
        for (std::size_t v = 0; v < n; ++v) code += stride[k * n + v] * symbols.column(v)[t - k * lag];
      }
      if (dense) {
        ++dense_counts[code];
      } else {
        ++sparse_counts[code];
      }
      ++wc.total_windows;
    }
    start += seg;
  }
  if (wc.total_windows == 0) {
    throw Error(Errc::kSeriesTooShort, "series too short for a window of order " +
                                           std::to_string(order) + " and lag " + std::to_string(lag));
  }
  if (dense) {
    for (std::uint64_t c = 0; c < cells; ++c) {
      if (dense_counts[c]) wc.counts.emplace(c, dense_counts[c]);
    }
  } else {
    wc.counts.insert(sparse_counts.begin(), sparse_counts.end());
  }
  return wc;
}

ProcessModel fit_mle(const WindowCounts& counts) {
  if (counts.total_windows == 0 || counts.counts.empty()) {
    throw Error(Errc::kZeroTotalCount, "no windows to fit");
  }
  const std::uint64_t cells = product_of_arities(counts.axis_arities);
  if (cells <= JointTable::kDenseCellLimit) {
    std::vector<double> mass(cells, 0.0);
    for (const auto& [code, c] : counts.counts) mass[code] = static_cast<double>(c);
    return ProcessModel(counts.n_vars, counts.order, counts.lag,
                        normalize_dense(mass, counts.axes, counts.axis_arities));
  }
  JointTable::SparseMass mass;
  for (const auto& [code, c] : counts.counts) mass.emplace(code, static_cast<double>(c));
  return ProcessModel(counts.n_vars, counts.order, counts.lag,
                      normalize_sparse(mass, counts.axes, counts.axis_arities));
}

InfoNetwork estimate_network(const SymbolSeries& symbols, std::size_t order, std::size_t lag,
                             Conditioning mode) {
  return build_network(fit_mle(count_windows(symbols, order, lag)), mode);
}

InfoNetwork estimate_network(const RealSeries& series, std::size_t order, std::size_t lag,
                             std::size_t bins, Conditioning mode) {
  return estimate_network(symbolize_quantile(series, bins).symbols, order, lag, mode);
}

SymbolSeries sample_process(const ProcessModel& model, std::size_t length, std::uint64_t seed) {
  if (model.lag() != 1) throw Error(Errc::kInvalidArgument, "sampling supports lag 1 only");
  const std::size_t n = model.n_vars();
  const std::size_t K = model.order();
  if (length < K + 1) throw Error(Errc::kSeriesTooShort, "sample path shorter than one window");
  const JointTable& table = model.window_table();
  const auto arities = model.variable_arities();
  const auto expected = ProcessModel::window_labels(n, K, 1);
  if (!std::equal(table.axes().begin(), table.axes().end(), expected.begin(), expected.end())) {
    throw Error(Errc::kInvalidArgument, "window table axes must be in canonical order");
  }

  // Axes 0..n-1 are the present, so code = present * past_cells + past.
  std::uint64_t present_cells = 1;
  for (std::size_t v = 0; v < n; ++v) present_cells *= arities[v];
  const std::uint64_t past_cells = table.cell_count() / present_cells;
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, double>>> conditional;
  std::map<std::uint64_t, double> past_marginal;
  table.for_each_nonzero([&](std::uint64_t code, double p) {
    conditional[code % past_cells].emplace_back(code / past_cells, p);
    past_marginal[code % past_cells] += p;
  });

  Rng rng(seed);
  auto draw = [&](const auto& options, double total) {
    double u = rng.uniform01() * total;
    for (const auto& [value, p] : options) {
      if (u < p) return value;
      u -= p;
    }
    return options.back().first;
  };

  std::vector<std::vector<Symbol>> columns(n, std::vector<Symbol>(length));
  const std::vector<std::pair<std::uint64_t, double>> pasts(past_marginal.begin(), past_marginal.end());
  const auto first = table.decode(draw(pasts, 1.0));
  for (std::size_t k = 1; k <= K; ++k) {
    for (std::size_t v = 0; v < n; ++v) columns[v][K - k] = static_cast<Symbol>(first[k * n + v]);
  }
  for (std::size_t t = K; t < length; ++t) {
    std::uint64_t past = 0;
    for (std::size_t k = 1; k <= K; ++k) {
      for (std::size_t v = 0; v < n; ++v) past = past * arities[v] + columns[v][t - k];
    }
    const auto it = conditional.find(past);
    if (it == conditional.end()) throw Error(Errc::kZeroTotalCount, "sample path reached a null past");
    const auto next = table.decode(draw(it->second, past_marginal[past]) * past_cells);
    for (std::size_t v = 0; v < n; ++v) columns[v][t] = static_cast<Symbol>(next[v]);
  }
  return SymbolSeries(std::move(columns), arities);
}

}  // namespace infoflow
