#include "infoflow/process_model.hpp"

#include <algorithm>

#include "infoflow/error.hpp"

namespace infoflow {

std::vector<AxisLabel> ProcessModel::window_labels(std::size_t n_vars, std::size_t order,
                                                   std::size_t lag) {
  std::vector<AxisLabel> labels;
  labels.reserve(n_vars * (order + 1));
  for (std::size_t k = 0; k <= order; ++k) {
    for (std::size_t v = 0; v < n_vars; ++v) {
      labels.push_back({static_cast<int>(v), -static_cast<int>(k * lag)});
    }
  }
  return labels;
}

ProcessModel::ProcessModel(std::size_t n_vars, std::size_t order, std::size_t lag,
                           JointTable window_table)
    : n_vars_(n_vars), order_(order), lag_(lag), table_(std::move(window_table)) {
  if (n_vars == 0 || order == 0 || lag == 0) {
    throw Error(Errc::kInvalidArgument, "process model needs N >= 1, K >= 1 and lag >= 1");
  }
  for (const AxisLabel& label : window_labels(n_vars, order, lag)) {
    positions_.push_back(table_.axis_position(label));
  }
}

ProcessModel ProcessModel::from_weights(
    std::size_t n_vars, std::size_t order, std::size_t lag, std::vector<std::size_t> arities,
    const std::function<double(std::span<const std::size_t>)>& weight) {
  if (arities.size() != n_vars) {
    throw Error(Errc::kShapeMismatch, "one arity per variable expected");
  }
  std::vector<std::size_t> axis_arities;
  for (std::size_t k = 0; k <= order; ++k) {
    axis_arities.insert(axis_arities.end(), arities.begin(), arities.end());
  }
  const std::uint64_t cells = product_of_arities(axis_arities);
  if (cells > JointTable::kDenseCellLimit) {
    throw Error(Errc::kSystemTooLarge, "window tuple space too large for a dense table");
  }
  std::vector<double> mass(cells);
  std::vector<std::size_t> tuple(axis_arities.size(), 0);
  for (std::uint64_t c = 0; c < cells; ++c) {
    mass[c] = weight(tuple);
    for (std::size_t a = tuple.size(); a-- > 0;) {
      if (++tuple[a] < axis_arities[a]) break;
      tuple[a] = 0;
    }
  }
  return ProcessModel(n_vars, order, lag,
                      normalize_dense(mass, window_labels(n_vars, order, lag), axis_arities));
}

std::vector<std::size_t> ProcessModel::variable_arities() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n_vars_; ++v) out.push_back(table_.arities()[position(v, 0)]);
  return out;
}

std::size_t ProcessModel::position(std::size_t variable, std::size_t lag_index) const {
  if (variable >= n_vars_ || lag_index > order_) {
    throw Error(Errc::kIndexOutOfRange, "window coordinate out of range");
  }
  return positions_[lag_index * n_vars_ + variable];
}

AxisSet ProcessModel::present(std::size_t variable) const {
  return AxisSet::single(position(variable, 0));
}

AxisSet ProcessModel::all_presents() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n_vars_; ++v) out.push_back(position(v, 0));
  return AxisSet(std::move(out));
}

AxisSet ProcessModel::past(std::size_t variable) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k <= order_; ++k) out.push_back(position(variable, k));
  return AxisSet(std::move(out));
}

AxisSet ProcessModel::all_pasts() const { return pasts_except({}); }

AxisSet ProcessModel::pasts_except(std::initializer_list<std::size_t> excluded) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < n_vars_; ++v) {
    if (std::find(excluded.begin(), excluded.end(), v) != excluded.end()) continue;
    for (std::size_t k = 1; k <= order_; ++k) out.push_back(position(v, k));
  }
  return AxisSet(std::move(out));
}

}  // namespace infoflow
