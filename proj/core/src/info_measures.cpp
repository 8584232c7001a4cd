#include "infoflow/info_measures.hpp"

#include <cmath>
#include <string>

#include "infoflow/error.hpp"

namespace infoflow {

double entropy(const JointTable& table) {
  double h = 0.0;
  table.for_each_nonzero([&](JointTable::Code, double p) { h -= p * std::log2(p); });
  // Rounding can produce -0.0 or a few ulps below zero for point masses.
  return h < 0.0 ? 0.0 : h;
}

double EntropyCache::joint(const AxisSet& axes) {
  if (axes.empty()) return 0.0;
  if (auto it = cache_.find(axes); it != cache_.end()) return it->second;
  const double h = axes.size() == table_->rank() ? entropy(*table_)
                                                 : entropy(marginalize(*table_, axes));
  cache_.emplace(axes, h);
  return h;
}

double EntropyCache::conditional(const AxisSet& targets, const AxisSet& givens) {
  if (givens.empty()) return joint(targets);
  return joint(targets | givens) - joint(givens);
}

double EntropyCache::mutual_information(const AxisSet& a, const AxisSet& b) {
  return joint(a) + joint(b) - joint(a | b);
}

double EntropyCache::conditional_mutual_information(const AxisSet& a, const AxisSet& b,
                                                    const AxisSet& givens) {
  if (givens.empty()) return mutual_information(a, b);
  return conditional(a, givens) - conditional(a, b | givens);
}

double EntropyCache::coinformation(std::span<const AxisSet> parts, const AxisSet& givens) {
  const std::size_t n = parts.size();
  if (n == 0) throw Error(Errc::kTooFewParts, "co-information needs at least one part");
  if (n > 24) throw Error(Errc::kInvalidArgument, "too many parts for inclusion-exclusion");
  const double h_givens = joint(givens);
  double total = 0.0;
  // Subsets visited in order of increasing size, then lexicographically, so
  // that two parts reproduce H(a) + H(b) - H(ab) term by term.
  for (std::size_t k = 1; k <= n; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      AxisSet u = givens;
      for (std::size_t i : idx) u = u | parts[i];
      const double h = givens.empty() ? joint(u) : joint(u) - h_givens;
      total += sign * h;
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return total;
}

void require_disjoint(const JointTable& table, std::span<const AxisSet> parts, const AxisSet& givens) {
  auto check_valid = [&](const AxisSet& s) {
    for (std::size_t pos : s) {
      if (pos >= table.rank()) throw Error(Errc::kIndexOutOfRange, "axis position out of range");
    }
  };
  check_valid(givens);
  AxisSet seen = givens;
  for (const AxisSet& part : parts) {
    if (part.empty()) throw Error(Errc::kEmptyAxisSet, "information parts must be nonempty");
    check_valid(part);
    if (part.intersects(seen)) {
      throw Error(Errc::kOverlappingAxisSets, "axis sets must be pairwise disjoint");
    }
    seen = seen | part;
  }
}

double conditional_entropy(const JointTable& table, const AxisSet& targets, const AxisSet& givens) {
  const AxisSet parts[] = {targets};
  require_disjoint(table, parts, givens);
  EntropyCache cache(table);
  return cache.conditional(targets, givens);
}

double mutual_information(const JointTable& table, const AxisSet& a, const AxisSet& b) {
  const AxisSet parts[] = {a, b};
  require_disjoint(table, parts, {});
  EntropyCache cache(table);
  return cache.mutual_information(a, b);
}

double conditional_mutual_information(const JointTable& table, const AxisSet& a, const AxisSet& b,
                                      const AxisSet& givens) {
  const AxisSet parts[] = {a, b};
  require_disjoint(table, parts, givens);
  EntropyCache cache(table);
  return cache.conditional_mutual_information(a, b, givens);
}

double total_correlation(const JointTable& table, std::span<const AxisSet> parts) {
  if (parts.size() < 2) throw Error(Errc::kTooFewParts, "total correlation needs >= 2 parts");
  require_disjoint(table, parts, {});
  EntropyCache cache(table);
  double sum = 0.0;
  AxisSet all;
  for (const AxisSet& part : parts) {
    sum += cache.joint(part);
    all = all | part;
  }
  return sum - cache.joint(all);
}

double multivariate_mutual_information(const JointTable& table, std::span<const AxisSet> parts) {
  if (parts.size() < 2) throw Error(Errc::kTooFewParts, "multivariate MI needs >= 2 parts");
  require_disjoint(table, parts, {});
  EntropyCache cache(table);
  return cache.coinformation(parts);
}

double multivariate_conditional_mi(const JointTable& table, std::span<const AxisSet> parts,
                                   const AxisSet& givens) {
  if (parts.empty()) throw Error(Errc::kTooFewParts, "need at least one part");
  require_disjoint(table, parts, givens);
  EntropyCache cache(table);
  return cache.coinformation(parts, givens);
}

double kl_divergence(const JointTable& p, const JointTable& q) {
  if (p.rank() != q.rank()) throw Error(Errc::kShapeMismatch, "tables differ in rank");
  for (std::size_t k = 0; k < p.rank(); ++k) {
    if (p.axes()[k] != q.axes()[k] || p.arities()[k] != q.arities()[k]) {
      throw Error(Errc::kShapeMismatch, "tables differ in axes or arities");
    }
  }
  double d = 0.0;
  p.for_each_nonzero([&](JointTable::Code code, double pc) {
    const double qc = q.mass_at(code);
    if (!(qc > 0.0)) {
      throw Error(Errc::kAbsoluteContinuityViolation,
                  "q has zero mass at a cell where p is positive");
    }
    d += pc * std::log2(pc / qc);
  });
  return d;
}

}  // namespace infoflow
