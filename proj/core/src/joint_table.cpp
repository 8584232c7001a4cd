#include "infoflow/joint_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "infoflow/error.hpp"

namespace infoflow {

AxisSet::AxisSet(std::initializer_list<std::size_t> positions)
    : AxisSet(std::vector<std::size_t>(positions)) {}

AxisSet::AxisSet(std::vector<std::size_t> positions) : positions_(std::move(positions)) {
  std::sort(positions_.begin(), positions_.end());
  positions_.erase(std::unique(positions_.begin(), positions_.end()), positions_.end());
}

bool AxisSet::contains(std::size_t position) const {
  return std::binary_search(positions_.begin(), positions_.end(), position);
}

bool AxisSet::intersects(const AxisSet& other) const {
  auto a = positions_.begin();
  auto b = other.positions_.begin();
  while (a != positions_.end() && b != other.positions_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

AxisSet AxisSet::unite(const AxisSet& other) const {
  std::vector<std::size_t> merged;
  merged.reserve(positions_.size() + other.positions_.size());
  std::set_union(positions_.begin(), positions_.end(), other.positions_.begin(),
                 other.positions_.end(), std::back_inserter(merged));
  AxisSet out;
  out.positions_ = std::move(merged);
  return out;
}

std::uint64_t product_of_arities(std::span<const std::size_t> arities) {
  std::uint64_t cells = 1;
  for (std::size_t a : arities) {
    if (a == 0) throw Error(Errc::kInvalidArgument, "axis arity must be positive");
    if (cells > std::numeric_limits<std::uint64_t>::max() / 2 / a) {
      throw Error(Errc::kSystemTooLarge, "tuple space exceeds 64-bit cell codes");
    }
    cells *= a;
  }
  return cells;
}

JointTable::JointTable(std::vector<AxisLabel> axes, std::vector<std::size_t> arities,
                       std::vector<double> dense_mass)
    : axes_(std::move(axes)), arities_(std::move(arities)), mass_(std::move(dense_mass)) {
  init_shape();
  if (std::get<std::vector<double>>(mass_).size() != cell_count_) {
    throw Error(Errc::kShapeMismatch, "dense mass size does not match the tuple space");
  }
  validate_mass();
}

JointTable::JointTable(std::vector<AxisLabel> axes, std::vector<std::size_t> arities,
                       SparseMass sparse_mass)
    : axes_(std::move(axes)), arities_(std::move(arities)), mass_(std::move(sparse_mass)) {
  init_shape();
  for (const auto& [code, p] : std::get<SparseMass>(mass_)) {
    if (code >= cell_count_) throw Error(Errc::kTupleOutOfRange, "cell code outside tuple space");
  }
  validate_mass();
}

void JointTable::init_shape() {
  if (axes_.size() != arities_.size()) {
    throw Error(Errc::kShapeMismatch, "axes and arities differ in length");
  }
  std::set<AxisLabel> seen(axes_.begin(), axes_.end());
  if (seen.size() != axes_.size()) {
    throw Error(Errc::kInvalidArgument, "duplicate axis label");
  }
  cell_count_ = product_of_arities(arities_);
  strides_.assign(arities_.size(), 1);
  for (std::size_t k = arities_.size(); k-- > 1;) {
    strides_[k - 1] = strides_[k] * arities_[k];
  }
}

void JointTable::validate_mass() const {
  double total = 0.0;
  bool bad = false;
  auto check = [&](double p) {
    if (!(p >= 0.0) || !std::isfinite(p)) bad = true;
    total += p;
  };
  if (const auto* dense = std::get_if<std::vector<double>>(&mass_)) {
    for (double p : *dense) check(p);
  } else {
    for (const auto& [code, p] : std::get<SparseMass>(mass_)) check(p);
  }
  if (bad) throw Error(Errc::kInvalidArgument, "probabilities must be finite and non-negative");
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(Errc::kInvalidArgument, "total mass " + std::to_string(total) + " is not 1");
  }
}

JointTable::Code JointTable::encode(std::span<const std::size_t> tuple) const {
  if (tuple.size() != rank()) throw Error(Errc::kShapeMismatch, "tuple rank mismatch");
  Code code = 0;
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k] >= arities_[k]) throw Error(Errc::kTupleOutOfRange, "symbol exceeds axis arity");
    code += tuple[k] * strides_[k];
  }
  return code;
}

std::vector<std::size_t> JointTable::decode(Code code) const {
  std::vector<std::size_t> tuple(rank());
  for (std::size_t k = 0; k < rank(); ++k) {
    tuple[k] = static_cast<std::size_t>(code / strides_[k]);
    code %= strides_[k];
  }
  return tuple;
}

double JointTable::mass_at(Code code) const {
  if (code >= cell_count_) throw Error(Errc::kTupleOutOfRange, "cell code outside tuple space");
  if (const auto* dense = std::get_if<std::vector<double>>(&mass_)) return (*dense)[code];
  const auto& sparse = std::get<SparseMass>(mass_);
  auto it = sparse.find(code);
  return it == sparse.end() ? 0.0 : it->second;
}

std::optional<std::size_t> JointTable::find_axis(AxisLabel label) const {
  auto it = std::find(axes_.begin(), axes_.end(), label);
  if (it == axes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - axes_.begin());
}

std::size_t JointTable::axis_position(AxisLabel label) const {
  if (auto pos = find_axis(label)) return *pos;
  throw Error(Errc::kIndexOutOfRange, "axis (" + std::to_string(label.variable) + ", " +
                                          std::to_string(label.time_offset) + ") not in table");
}

AxisSet JointTable::all_axes() const {
  std::vector<std::size_t> all(rank());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  return AxisSet(std::move(all));
}

namespace {

void check_counts_shape(const std::vector<AxisLabel>& axes, const std::vector<std::size_t>& arities) {
  if (axes.size() != arities.size()) {
    throw Error(Errc::kShapeMismatch, "axes and arities differ in length");
  }
}

double checked_total(double total) {
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw Error(Errc::kZeroTotalCount, "counts must have a positive finite total");
  }
  return total;
}

}  // namespace

JointTable normalize(const TupleCounts& counts, std::vector<AxisLabel> axes,
                     std::vector<std::size_t> arities) {
  check_counts_shape(axes, arities);
  const std::uint64_t cells = product_of_arities(arities);
  JointTable::SparseMass coded;
  std::vector<std::uint64_t> strides(arities.size(), 1);
  for (std::size_t k = arities.size(); k-- > 1;) strides[k - 1] = strides[k] * arities[k];
  for (const auto& [tuple, c] : counts) {
    if (tuple.size() != arities.size()) throw Error(Errc::kShapeMismatch, "tuple rank mismatch");
    if (c < 0.0) throw Error(Errc::kInvalidArgument, "negative count");
    JointTable::Code code = 0;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
      if (tuple[k] >= arities[k]) throw Error(Errc::kTupleOutOfRange, "symbol exceeds axis arity");
      code += tuple[k] * strides[k];
    }
    coded[code] += c;
  }
  if (cells <= JointTable::kDenseCellLimit) {
    std::vector<double> dense(cells, 0.0);
    for (const auto& [code, c] : coded) dense[code] = c;
    return normalize_dense(dense, std::move(axes), std::move(arities));
  }
  return normalize_sparse(coded, std::move(axes), std::move(arities));
}

JointTable normalize_dense(std::span<const double> counts, std::vector<AxisLabel> axes,
                           std::vector<std::size_t> arities) {
  check_counts_shape(axes, arities);
  const std::uint64_t cells = product_of_arities(arities);
  if (counts.size() != cells) throw Error(Errc::kShapeMismatch, "count vector size mismatch");
  double total = 0.0;
  for (double c : counts) {
    if (c < 0.0) throw Error(Errc::kInvalidArgument, "negative count");
    total += c;
  }
  checked_total(total);
  if (cells > JointTable::kDenseCellLimit) {
    JointTable::SparseMass sparse;
    for (std::size_t c = 0; c < counts.size(); ++c) {
      if (counts[c] > 0.0) sparse.emplace(c, counts[c] / total);
    }
    return JointTable(std::move(axes), std::move(arities), std::move(sparse));
  }
  std::vector<double> mass(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) mass[c] = counts[c] / total;
  return JointTable(std::move(axes), std::move(arities), std::move(mass));
}

JointTable normalize_sparse(const JointTable::SparseMass& counts, std::vector<AxisLabel> axes,
                            std::vector<std::size_t> arities) {
  check_counts_shape(axes, arities);
  const std::uint64_t cells = product_of_arities(arities);
  // Sum in code order so the total does not depend on hash iteration order.
  std::vector<std::pair<JointTable::Code, double>> ordered(counts.begin(), counts.end());
  std::sort(ordered.begin(), ordered.end());
  double total = 0.0;
  for (const auto& [code, c] : ordered) {
    if (c < 0.0) throw Error(Errc::kInvalidArgument, "negative count");
    if (code >= cells) throw Error(Errc::kTupleOutOfRange, "cell code outside tuple space");
    total += c;
  }
  checked_total(total);
  if (cells <= JointTable::kDenseCellLimit) {
    std::vector<double> mass(cells, 0.0);
    for (const auto& [code, c] : ordered) mass[code] = c / total;
    return JointTable(std::move(axes), std::move(arities), std::move(mass));
  }
  JointTable::SparseMass sparse;
  sparse.reserve(ordered.size());
  for (const auto& [code, c] : ordered) {
    if (c > 0.0) sparse.emplace(code, c / total);
  }
  return JointTable(std::move(axes), std::move(arities), std::move(sparse));
}

JointTable marginalize(const JointTable& table, const AxisSet& keep) {
  if (keep.empty()) throw Error(Errc::kEmptyAxisSet, "marginalize needs at least one axis");
  for (std::size_t pos : keep) {
    if (pos >= table.rank()) throw Error(Errc::kIndexOutOfRange, "axis position out of range");
  }

  std::vector<AxisLabel> axes;
  std::vector<std::size_t> arities;
  for (std::size_t pos : keep) {
    axes.push_back(table.axes()[pos]);
    arities.push_back(table.arities()[pos]);
  }
  const std::uint64_t out_cells = product_of_arities(arities);

  // Stride of each source axis inside the result code (0 for dropped axes).
  std::vector<std::uint64_t> out_stride(table.rank(), 0);
  {
    std::uint64_t s = 1;
    for (std::size_t k = keep.size(); k-- > 0;) {
      out_stride[keep.positions()[k]] = s;
      s *= arities[k];
    }
  }

  const auto src_arity = table.arities();
  const auto src_stride = table.strides();

  if (const auto* dense = table.dense_mass(); dense && out_cells <= JointTable::kDenseCellLimit) {
    std::vector<double> out(out_cells, 0.0);
    const std::size_t rank = table.rank();
    std::vector<std::size_t> digit(rank, 0);
    std::uint64_t target = 0;
    const std::size_t n = dense->size();
    for (std::size_t c = 0; c < n; ++c) {
      out[target] += (*dense)[c];
      // Odometer increment, last axis fastest.
      for (std::size_t k = rank; k-- > 0;) {
        if (++digit[k] < src_arity[k]) {
          target += out_stride[k];
          break;
        }
        digit[k] = 0;
        target -= out_stride[k] * (src_arity[k] - 1);
      }
    }
    // Rounding can leave the sum a few ulps away from 1; accept as produced.
    return JointTable(std::move(axes), std::move(arities), std::move(out));
  }

  JointTable::SparseMass out;
  table.for_each_nonzero([&](JointTable::Code code, double p) {
    std::uint64_t target = 0;
    for (std::size_t k = 0; k < table.rank(); ++k) {
      const std::uint64_t d = (code / src_stride[k]) % src_arity[k];
      target += d * out_stride[k];
    }
    out[target] += p;
  });
  if (out_cells <= JointTable::kDenseCellLimit) {
    std::vector<double> dense_out(out_cells, 0.0);
    for (const auto& [code, p] : out) dense_out[code] = p;
    return JointTable(std::move(axes), std::move(arities), std::move(dense_out));
  }
  return JointTable(std::move(axes), std::move(arities), std::move(out));
}

}  // namespace infoflow
