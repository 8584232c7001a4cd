#pragma once

#include <map>
#include <span>
#include <vector>

#include "infoflow/joint_table.hpp"

namespace infoflow {

// All quantities are in bits. 0 log 0 is taken as 0.

double entropy(const JointTable& table);

// Memoizes marginal entropies H(X_S) of one table. Not thread-safe; create one
// per task. The table must outlive the cache.
class EntropyCache {
 public:
  explicit EntropyCache(const JointTable& table) : table_(&table) {}

  const JointTable& table() const noexcept { return *table_; }

  // H of the marginal over `axes`; H(empty) = 0.
  double joint(const AxisSet& axes);
  double conditional(const AxisSet& targets, const AxisSet& givens);
  double mutual_information(const AxisSet& a, const AxisSet& b);
  double conditional_mutual_information(const AxisSet& a, const AxisSet& b, const AxisSet& givens);

  // Co-information of the parts given `givens`, by inclusion-exclusion over
  // conditional entropies. One part yields H(part | givens). Parts may be
  // composite axis sets; no disjointness check is made here.
  double coinformation(std::span<const AxisSet> parts, const AxisSet& givens = {});

  std::size_t size() const noexcept { return cache_.size(); }

 private:
  const JointTable* table_;
  std::map<AxisSet, double> cache_;
};

double conditional_entropy(const JointTable& table, const AxisSet& targets, const AxisSet& givens);
double mutual_information(const JointTable& table, const AxisSet& a, const AxisSet& b);
double conditional_mutual_information(const JointTable& table, const AxisSet& a, const AxisSet& b,
                                      const AxisSet& givens);
double total_correlation(const JointTable& table, std::span<const AxisSet> parts);
// May be negative (synergy).
double multivariate_mutual_information(const JointTable& table, std::span<const AxisSet> parts);
// Accepts one or more parts; with givens empty it equals the unconditioned value.
double multivariate_conditional_mi(const JointTable& table, std::span<const AxisSet> parts,
                                   const AxisSet& givens);
double kl_divergence(const JointTable& p, const JointTable& q);

// Throws unless every set is a valid, nonempty position list and all sets are
// pairwise disjoint. `givens` may be empty.
void require_disjoint(const JointTable& table, std::span<const AxisSet> parts, const AxisSet& givens);

}  // namespace infoflow
