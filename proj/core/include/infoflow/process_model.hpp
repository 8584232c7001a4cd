#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "infoflow/joint_table.hpp"

namespace infoflow {

// Stationary K-th order window distribution over N variables. Axis
// lag_index * N + variable carries label {variable, -lag_index * lag}.
class ProcessModel {
 public:
  // Throws InvalidArgument on n_vars == 0, order == 0 or lag == 0, and
  // IndexOutOfRange when the table lacks one of the window axes.
  ProcessModel(std::size_t n_vars, std::size_t order, std::size_t lag, JointTable window_table);

  // Builds the window table from an unnormalized weight per window tuple
  // (tuple indexed like the axes above).
  static ProcessModel from_weights(
      std::size_t n_vars, std::size_t order, std::size_t lag, std::vector<std::size_t> arities,
      const std::function<double(std::span<const std::size_t>)>& weight);

  static std::vector<AxisLabel> window_labels(std::size_t n_vars, std::size_t order, std::size_t lag);

  std::size_t n_vars() const noexcept { return n_vars_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t lag() const noexcept { return lag_; }
  const JointTable& window_table() const noexcept { return table_; }
  // Alphabet size of each variable (taken from its present axis).
  std::vector<std::size_t> variable_arities() const;

  std::size_t position(std::size_t variable, std::size_t lag_index) const;
  AxisSet present(std::size_t variable) const;
  AxisSet all_presents() const;
  // Offsets -lag .. -order*lag of one variable.
  AxisSet past(std::size_t variable) const;
  AxisSet all_pasts() const;
  // Pasts of every variable except those listed.
  AxisSet pasts_except(std::initializer_list<std::size_t> excluded) const;

 private:
  std::size_t n_vars_;
  std::size_t order_;
  std::size_t lag_;
  JointTable table_;
  std::vector<std::size_t> positions_;
};

}  // namespace infoflow
