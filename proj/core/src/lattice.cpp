#include "infoflow/lattice.hpp"

#include <cmath>
#include <string>

#include "infoflow/error.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

SystemLayout::SystemLayout(std::size_t n_vars, std::size_t t_steps)
    : n_vars_(n_vars), t_steps_(t_steps) {
  if (n_vars == 0 || t_steps == 0) {
    throw Error(Errc::kInvalidArgument, "system needs at least one variable and one step");
  }
}

AxisLabel SystemLayout::label(std::size_t variable, std::size_t t) const {
  if (variable >= n_vars_ || t == 0 || t > t_steps_) {
    throw Error(Errc::kIndexOutOfRange, "lattice coordinate outside the system");
  }
  return AxisLabel{static_cast<int>(variable), static_cast<int>(t) - static_cast<int>(t_steps_)};
}

std::vector<AxisLabel> SystemLayout::labels() const {
  std::vector<AxisLabel> out;
  out.reserve(n_vars_ * t_steps_);
  for (std::size_t i = 0; i < n_vars_; ++i) {
    for (std::size_t t = 1; t <= t_steps_; ++t) out.push_back(label(i, t));
  }
  return out;
}

JointTable make_system(const SystemLayout& layout, std::vector<double> mass, std::size_t arity) {
  std::vector<std::size_t> arities(layout.n_vars() * layout.t_steps(), arity);
  return JointTable(layout.labels(), std::move(arities), std::move(mass));
}

JointTable random_system(const SystemLayout& layout, std::uint64_t seed, std::size_t arity,
                         double zero_fraction) {
  std::vector<std::size_t> arities(layout.n_vars() * layout.t_steps(), arity);
  const std::uint64_t cells = product_of_arities(arities);
  if (cells > kMaxVerificationCells) {
    throw Error(Errc::kSystemTooLarge, "random system exceeds the verification cell limit");
  }
  Rng rng(seed);
  std::vector<double> weight(cells);
  for (auto& w : weight) {
    const bool zero = zero_fraction > 0.0 && rng.uniform01() < zero_fraction;
    const double e = rng.exponential();
    w = zero ? 0.0 : e;
  }
  bool any = false;
  for (double w : weight) any = any || w > 0.0;
  if (!any) weight[rng.below(cells)] = 1.0;
  return normalize_dense(weight, layout.labels(), std::move(arities));
}

LatticeIndex::LatticeIndex(std::vector<std::optional<std::size_t>> entries)
    : entries_(std::move(entries)) {
  if (present_count() == 0) {
    throw Error(Errc::kIndexOutOfRange, "lattice index needs at least one present entry");
  }
  for (const auto& e : entries_) {
    if (e && *e == 0) throw Error(Errc::kIndexOutOfRange, "lattice time indices start at 1");
  }
}

std::size_t LatticeIndex::present_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += e.has_value();
  return n;
}

VerificationReport VerificationReport::equality(std::string identity, double lhs, double rhs,
                                                double tolerance) {
  const double gap = lhs - rhs;
  return {std::move(identity), lhs, rhs, gap, tolerance, std::abs(gap) <= tolerance};
}

VerificationReport VerificationReport::at_least(std::string identity, double lhs, double rhs,
                                                double tolerance) {
  const double gap = std::min(0.0, lhs - rhs);
  return {std::move(identity), lhs, rhs, gap, tolerance, std::abs(gap) <= tolerance};
}

void to_json(nlohmann::json& j, const VerificationReport& r) {
  j = nlohmann::json{{"identity", r.identity}, {"lhs", r.lhs},     {"rhs", r.rhs},
                     {"gap", r.gap},           {"tolerance", r.tolerance}, {"passed", r.passed},
                     {"hard", r.hard}};
}

namespace {

void require_verifiable(const JointTable& system) {
  if (system.cell_count() > kMaxVerificationCells || !system.is_dense()) {
    throw Error(Errc::kSystemTooLarge, "exact verification is limited to 2^20 dense cells");
  }
}

// Calls f(combination) for every size-m subset of `items`, lexicographically.
template <class F>
void for_each_combination(const std::vector<std::size_t>& items, std::size_t m, F&& f) {
  const std::size_t n = items.size();
  if (m > n) return;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::vector<std::size_t> combo(m);
  while (true) {
    for (std::size_t i = 0; i < m; ++i) combo[i] = items[idx[i]];
    f(combo);
    std::size_t pos = m;
    while (pos > 0 && idx[pos - 1] == n - m + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < m; ++i) idx[i] = idx[i - 1] + 1;
  }
}

// Calls f(times) for every times[k] in [1, bounds[k]], last index fastest.
template <class F>
void for_each_time_tuple(const std::vector<std::size_t>& bounds, F&& f) {
  for (std::size_t b : bounds) {
    if (b == 0) return;
  }
  std::vector<std::size_t> t(bounds.size(), 1);
  while (true) {
    f(t);
    std::size_t k = t.size();
    while (k > 0) {
      if (++t[k - 1] <= bounds[k - 1]) break;
      t[k - 1] = 1;
      --k;
    }
    if (k == 0) return;
  }
}

}  // namespace

InformationLattice::InformationLattice(const JointTable& system, const SystemLayout& layout)
    : system_(system), layout_(layout), cache_(system) {
  require_verifiable(system);
  positions_.reserve(layout.n_vars() * layout.t_steps());
  for (std::size_t i = 0; i < layout.n_vars(); ++i) {
    for (std::size_t t = 1; t <= layout.t_steps(); ++t) {
      positions_.push_back(system.axis_position(layout.label(i, t)));
    }
  }
}

std::size_t InformationLattice::position(std::size_t variable, std::size_t t) const {
  if (variable >= layout_.n_vars() || t == 0 || t > layout_.t_steps()) {
    throw Error(Errc::kIndexOutOfRange, "lattice coordinate outside the system");
  }
  return positions_[variable * layout_.t_steps() + (t - 1)];
}

AxisSet InformationLattice::history(std::size_t variable, std::size_t from, std::size_t to) const {
  std::vector<std::size_t> out;
  for (std::size_t t = from; t <= to; ++t) out.push_back(position(variable, t));
  return AxisSet(std::move(out));
}

double InformationLattice::term(const LatticeIndex& index) {
  if (index.size() != layout_.n_vars()) {
    throw Error(Errc::kIndexOutOfRange, "lattice index length differs from the variable count");
  }
  std::vector<AxisSet> parts;
  AxisSet givens;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (!index[i]) continue;
    const std::size_t t = *index[i];
    if (t > layout_.t_steps()) throw Error(Errc::kIndexOutOfRange, "lattice time beyond T");
    parts.push_back(AxisSet::single(position(i, t)));
    givens = givens | history(i, 1, t - 1);
  }
  return cache_.coinformation(parts, givens);
}

double InformationLattice::lattice_sum(const std::vector<std::size_t>& variables,
                                       const std::vector<std::size_t>& bounds) {
  double sum = 0.0;
  for_each_time_tuple(bounds, [&](const std::vector<std::size_t>& times) {
    std::vector<std::optional<std::size_t>> entries(layout_.n_vars());
    for (std::size_t k = 0; k < variables.size(); ++k) entries[variables[k]] = times[k];
    sum += term(LatticeIndex(std::move(entries)));
  });
  return sum;
}

double InformationLattice::group_information(const std::vector<std::size_t>& variables) {
  std::vector<AxisSet> parts;
  for (std::size_t v : variables) parts.push_back(full_history(v));
  return cache_.coinformation(parts);
}

double lattice_term(const JointTable& system, const SystemLayout& layout, const LatticeIndex& index) {
  InformationLattice lattice(system, layout);
  return lattice.term(index);
}

VerificationReport verify_entropy_chain_rule(const JointTable& system,
                                             const std::vector<std::size_t>& axis_order) {
  require_verifiable(system);
  EntropyCache cache(system);
  AxisSet prefix;
  double rhs = 0.0;
  for (std::size_t pos : axis_order) {
    const AxisSet axis = AxisSet::single(pos);
    const AxisSet parts[] = {axis};
    require_disjoint(system, parts, prefix);
    rhs += cache.conditional(axis, prefix);
    prefix = prefix | axis;
  }
  return VerificationReport::equality("chain_rule_of_entropy", cache.joint(prefix), rhs,
                                      kIdentityTolerance);
}

VerificationReport verify_information_chain_rule(const JointTable& system, const AxisSet& target,
                                                 const std::vector<AxisSet>& sources) {
  require_verifiable(system);
  std::vector<AxisSet> all = sources;
  all.push_back(target);
  require_disjoint(system, all, {});
  EntropyCache cache(system);
  AxisSet prefix;
  double rhs = 0.0;
  for (const AxisSet& s : sources) {
    rhs += cache.conditional_mutual_information(target, s, prefix);
    prefix = prefix | s;
  }
  return VerificationReport::equality("chain_rule_of_information",
                                      cache.mutual_information(target, prefix), rhs,
                                      kIdentityTolerance);
}

VerificationReport verify_identity_lemma1(const JointTable& system, const std::vector<AxisSet>& parts,
                                          const AxisSet& conditioner) {
  require_verifiable(system);
  if (parts.size() < 2) throw Error(Errc::kTooFewParts, "identity needs at least two parts");
  if (conditioner.empty()) throw Error(Errc::kEmptyAxisSet, "conditioner must be nonempty");
  require_disjoint(system, parts, conditioner);
  EntropyCache cache(system);
  const double lhs = cache.coinformation(parts, conditioner);

  std::vector<AxisSet> merged(parts.begin(), parts.end() - 1);
  std::vector<AxisSet> with_y = merged;
  merged.push_back(parts.back() | conditioner);
  with_y.push_back(conditioner);
  const double rhs = cache.coinformation(merged) - cache.coinformation(with_y);
  return VerificationReport::equality("identity_of_conditional_coinformation", lhs, rhs,
                                      kIdentityTolerance);
}

VerificationReport verify_chain_rule_lemma2(const JointTable& system, const SystemLayout& layout,
                                            const ChainRuleSelection& selection) {
  InformationLattice lattice(system, layout);
  std::vector<bool> used(layout.n_vars(), false);
  auto claim = [&](std::size_t v) {
    if (v >= layout.n_vars()) throw Error(Errc::kIndexOutOfRange, "variable out of range");
    if (used[v]) throw Error(Errc::kOverlappingAxisSets, "variable used twice in selection");
    used[v] = true;
  };
  std::vector<AxisSet> parts;
  for (const auto& group : selection.groups) {
    if (group.empty()) throw Error(Errc::kEmptyAxisSet, "empty variable group");
    AxisSet part;
    for (std::size_t v : group) {
      claim(v);
      part = part | lattice.full_history(v);
    }
    parts.push_back(part);
  }
  claim(selection.chained);
  AxisSet conditioner;
  for (std::size_t v : selection.conditioners) {
    claim(v);
    conditioner = conditioner | lattice.full_history(v);
  }

  const std::size_t T = layout.t_steps();
  auto& cache = lattice.cache();
  std::vector<AxisSet> lhs_parts = parts;
  lhs_parts.push_back(lattice.full_history(selection.chained));
  const double lhs = cache.coinformation(lhs_parts, conditioner);

  double rhs = 0.0;
  for (std::size_t t = 1; t <= T; ++t) {
    std::vector<AxisSet> step_parts = parts;
    step_parts.push_back(AxisSet::single(lattice.position(selection.chained, t)));
    rhs += cache.coinformation(step_parts,
                               conditioner | lattice.history(selection.chained, 1, t - 1));
  }
  return VerificationReport::equality("chain_rule_of_conditional_coinformation", lhs, rhs,
                                      kIdentityTolerance);
}

VerificationReport verify_chain_rule_lemma2(const JointTable& system, const SystemLayout& layout) {
  ChainRuleSelection selection;
  for (std::size_t v = 0; v + 1 < layout.n_vars(); ++v) selection.groups.push_back({v});
  selection.chained = layout.n_vars() - 1;
  return verify_chain_rule_lemma2(system, layout, selection);
}

VerificationReport verify_joint_entropy_decomposition(const JointTable& system,
                                                      const SystemLayout& layout) {
  InformationLattice lattice(system, layout);
  const std::size_t N = layout.n_vars();
  const std::size_t T = layout.t_steps();
  std::vector<std::size_t> everyone(N);
  for (std::size_t i = 0; i < N; ++i) everyone[i] = i;

  double rhs = 0.0;
  for (std::size_t k = 1; k <= N; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    for_each_combination(everyone, k, [&](const std::vector<std::size_t>& subset) {
      rhs += sign * lattice.lattice_sum(subset, std::vector<std::size_t>(subset.size(), T));
    });
  }
  AxisSet all;
  for (std::size_t i = 0; i < N; ++i) all = all | lattice.full_history(i);
  return VerificationReport::equality("joint_entropy_decomposition", lattice.cache().joint(all), rhs,
                                      kIdentityTolerance);
}

VerificationReport verify_lattice_sum(const JointTable& system, const SystemLayout& layout,
                                      const std::vector<std::size_t>& variables) {
  InformationLattice lattice(system, layout);
  if (variables.empty()) throw Error(Errc::kEmptyAxisSet, "need at least one variable");
  const double lhs = lattice.group_information(variables);
  const double rhs =
      lattice.lattice_sum(variables, std::vector<std::size_t>(variables.size(), layout.t_steps()));
  return VerificationReport::equality("lattice_sum_of_group_information", lhs, rhs,
                                      kIdentityTolerance);
}

VerificationReport verify_partial_expansion(const JointTable& system, const SystemLayout& layout,
                                            std::size_t k,
                                            std::optional<std::vector<std::size_t>> times) {
  InformationLattice lattice(system, layout);
  const std::size_t N = layout.n_vars();
  if (k < 1 || k > N) throw Error(Errc::kIndexOutOfRange, "k must lie in [1, N]");
  std::vector<std::size_t> t = times.value_or(std::vector<std::size_t>(N, layout.t_steps()));
  if (t.size() != N) throw Error(Errc::kShapeMismatch, "one time index per variable expected");
  for (std::size_t v : t) {
    if (v == 0 || v > layout.t_steps()) throw Error(Errc::kIndexOutOfRange, "time index out of range");
  }

  std::vector<AxisSet> focal;
  AxisSet givens;
  for (std::size_t i = 0; i < k; ++i) {
    focal.push_back(AxisSet::single(lattice.position(i, t[i])));
    givens = givens | lattice.history(i, 1, t[i] - 1);
  }
  for (std::size_t j = k; j < N; ++j) givens = givens | lattice.history(j, 1, t[j]);
  const double lhs = lattice.cache().coinformation(focal, givens);

  std::vector<std::size_t> rest;
  for (std::size_t j = k; j < N; ++j) rest.push_back(j);
  double rhs = 0.0;
  for (std::size_t m = 0; m <= rest.size(); ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    for_each_combination(rest, m, [&](const std::vector<std::size_t>& subset) {
      std::vector<std::size_t> bounds;
      for (std::size_t s : subset) bounds.push_back(t[s]);
      double inner = 0.0;
      for_each_time_tuple(bounds, [&](const std::vector<std::size_t>& ts) {
        std::vector<std::optional<std::size_t>> entries(N);
        for (std::size_t i = 0; i < k; ++i) entries[i] = t[i];
        for (std::size_t q = 0; q < subset.size(); ++q) entries[subset[q]] = ts[q];
        inner += lattice.term(LatticeIndex(std::move(entries)));
      });
      rhs += sign * inner;
    });
  }
  return VerificationReport::equality("partial_expansion_k" + std::to_string(k), lhs, rhs,
                                      kIdentityTolerance);
}

}  // namespace infoflow
