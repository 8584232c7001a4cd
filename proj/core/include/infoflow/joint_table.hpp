#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

namespace infoflow {

// Identifies one axis of a joint table: a variable observed at a time offset
// (0 = present, negative = steps into the past).
struct AxisLabel {
  int variable = 0;
  int time_offset = 0;

  friend auto operator<=>(const AxisLabel&, const AxisLabel&) = default;
};

// Sorted, duplicate-free set of axis positions into a JointTable.
class AxisSet {
 public:
  AxisSet() = default;
  AxisSet(std::initializer_list<std::size_t> positions);
  explicit AxisSet(std::vector<std::size_t> positions);

  static AxisSet single(std::size_t position) { return AxisSet({position}); }

  bool empty() const noexcept { return positions_.empty(); }
  std::size_t size() const noexcept { return positions_.size(); }
  auto begin() const noexcept { return positions_.begin(); }
  auto end() const noexcept { return positions_.end(); }
  std::span<const std::size_t> positions() const noexcept { return positions_; }

  bool contains(std::size_t position) const;
  bool intersects(const AxisSet& other) const;
  AxisSet unite(const AxisSet& other) const;

  friend bool operator==(const AxisSet&, const AxisSet&) = default;
  friend auto operator<=>(const AxisSet& a, const AxisSet& b) {
    return a.positions_ <=> b.positions_;
  }

 private:
  std::vector<std::size_t> positions_;
};

inline AxisSet operator|(const AxisSet& a, const AxisSet& b) { return a.unite(b); }

// Normalized probability mass over the product space of labeled finite axes.
//
// Cells are addressed by a mixed-radix code with axis 0 most significant, so
// ascending codes enumerate tuples in lexicographic order. Tables with at most
// kDenseCellLimit cells store every cell; larger ones keep only nonzero cells
// in a hash map. Both layouts answer every query identically.
class JointTable {
 public:
  using Code = std::uint64_t;
  using SparseMass = std::unordered_map<Code, double>;

  static constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 24;
  static constexpr double kNormalizationTolerance = 1e-12;

  // Validates shape and mass; throws Error on violation.
  JointTable(std::vector<AxisLabel> axes, std::vector<std::size_t> arities,
             std::vector<double> dense_mass);
  JointTable(std::vector<AxisLabel> axes, std::vector<std::size_t> arities,
             SparseMass sparse_mass);

  std::size_t rank() const noexcept { return axes_.size(); }
  std::span<const AxisLabel> axes() const noexcept { return axes_; }
  std::span<const std::size_t> arities() const noexcept { return arities_; }
  std::uint64_t cell_count() const noexcept { return cell_count_; }
  bool is_dense() const noexcept { return std::holds_alternative<std::vector<double>>(mass_); }

  Code encode(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> decode(Code code) const;

  double mass(std::span<const std::size_t> tuple) const { return mass_at(encode(tuple)); }
  double mass_at(Code code) const;

  std::optional<std::size_t> find_axis(AxisLabel label) const;
  // Throws IndexOutOfRange when the label is absent.
  std::size_t axis_position(AxisLabel label) const;
  AxisSet all_axes() const;

  // Calls f(code, p) for every cell with p > 0, in a deterministic order.
  template <class F>
  void for_each_nonzero(F&& f) const {
    if (const auto* dense = std::get_if<std::vector<double>>(&mass_)) {
      for (std::size_t c = 0; c < dense->size(); ++c) {
        if ((*dense)[c] > 0.0) f(static_cast<Code>(c), (*dense)[c]);
      }
    } else {
      for (const auto& [code, p] : std::get<SparseMass>(mass_)) {
        if (p > 0.0) f(code, p);
      }
    }
  }

  const std::vector<double>* dense_mass() const noexcept {
    return std::get_if<std::vector<double>>(&mass_);
  }

  std::span<const std::uint64_t> strides() const noexcept { return strides_; }

 private:
  void init_shape();
  void validate_mass() const;

  std::vector<AxisLabel> axes_;
  std::vector<std::size_t> arities_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t cell_count_ = 1;
  std::variant<std::vector<double>, SparseMass> mass_;
};

using Tuple = std::vector<std::size_t>;
using TupleCounts = std::map<Tuple, double>;

std::uint64_t product_of_arities(std::span<const std::size_t> arities);

JointTable normalize(const TupleCounts& counts, std::vector<AxisLabel> axes,
                     std::vector<std::size_t> arities);
// Counts indexed by cell code, one entry per cell.
JointTable normalize_dense(std::span<const double> counts, std::vector<AxisLabel> axes,
                           std::vector<std::size_t> arities);
JointTable normalize_sparse(const JointTable::SparseMass& counts, std::vector<AxisLabel> axes,
                            std::vector<std::size_t> arities);

// Result axes are `keep` in original order.
JointTable marginalize(const JointTable& table, const AxisSet& keep);

}  // namespace infoflow
