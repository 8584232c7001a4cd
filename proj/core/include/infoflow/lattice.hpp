#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoflow/info_measures.hpp"
#include "infoflow/joint_table.hpp"

namespace infoflow {

// Exact joint distribution of N variables over T steps. Axis (i, t), with
// t in 1..T, carries the label {i, t - T}: the last step is the present.
class SystemLayout {
 public:
  SystemLayout(std::size_t n_vars, std::size_t t_steps);

  std::size_t n_vars() const noexcept { return n_vars_; }
  std::size_t t_steps() const noexcept { return t_steps_; }

  AxisLabel label(std::size_t variable, std::size_t t) const;
  // Variable-major: (0,1), (0,2), ..., (0,T), (1,1), ...
  std::vector<AxisLabel> labels() const;

 private:
  std::size_t n_vars_;
  std::size_t t_steps_;
};

// Largest tuple space accepted by the exhaustive verifiers.
inline constexpr std::uint64_t kMaxVerificationCells = std::uint64_t{1} << 20;

// Dirichlet(1) random joint over the layout's axes, optionally with a random
// fraction of cells forced to zero (at least one cell stays positive).
JointTable random_system(const SystemLayout& layout, std::uint64_t seed, std::size_t arity = 2,
                         double zero_fraction = 0.0);

// Builds a system table from one probability per cell (variable-major axes).
JointTable make_system(const SystemLayout& layout, std::vector<double> mass, std::size_t arity = 2);

// Per-variable time index into the lattice; std::nullopt marks an absent
// variable.
class LatticeIndex {
 public:
  explicit LatticeIndex(std::vector<std::optional<std::size_t>> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::optional<std::size_t>& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t present_count() const;

 private:
  std::vector<std::optional<std::size_t>> entries_;
};

struct VerificationReport {
  std::string identity;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  // Soft reports are informational: they never fail a verification run.
  bool hard = true;

  // passed = |gap| <= tolerance with gap = lhs - rhs.
  static VerificationReport equality(std::string identity, double lhs, double rhs, double tolerance);
  // lhs >= rhs - tolerance; gap is the violation min(0, lhs - rhs).
  static VerificationReport at_least(std::string identity, double lhs, double rhs, double tolerance);
};

void to_json(nlohmann::json& j, const VerificationReport& r);

inline constexpr double kIdentityTolerance = 1e-9;

// Variable groups for the chain-rule verifier: the parts are the full
// histories of each group, the chain runs over the steps of `chained`, and
// the full histories of `conditioners` are held fixed throughout.
struct ChainRuleSelection {
  std::vector<std::vector<std::size_t>> groups;
  std::size_t chained = 0;
  std::vector<std::size_t> conditioners;
};

// Lattice queries over one exact system. Holds a reference to the table and
// memoizes marginal entropies, so one instance should serve many queries.
class InformationLattice {
 public:
  // Throws SystemTooLarge above kMaxVerificationCells and IndexOutOfRange if
  // the table does not carry every (i, t) axis of the layout.
  InformationLattice(const JointTable& system, const SystemLayout& layout);

  const SystemLayout& layout() const noexcept { return layout_; }
  EntropyCache& cache() noexcept { return cache_; }

  std::size_t position(std::size_t variable, std::size_t t) const;
  // Axes X_i^{from..to}; empty when from > to.
  AxisSet history(std::size_t variable, std::size_t from, std::size_t to) const;
  AxisSet full_history(std::size_t variable) const { return history(variable, 1, layout_.t_steps()); }

  // I(X_i^{t_i}; ... | each present variable's own strict past).
  double term(const LatticeIndex& index);
  // Sum of term() over every t in [1..bound_i] for the listed variables.
  double lattice_sum(const std::vector<std::size_t>& variables,
                     const std::vector<std::size_t>& bounds);
  // Co-information of the listed variables' full histories.
  double group_information(const std::vector<std::size_t>& variables);

 private:
  const JointTable& system_;
  SystemLayout layout_;
  std::vector<std::size_t> positions_;
  EntropyCache cache_;
};

double lattice_term(const JointTable& system, const SystemLayout& layout, const LatticeIndex& index);

VerificationReport verify_entropy_chain_rule(const JointTable& system,
                                             const std::vector<std::size_t>& axis_order);
VerificationReport verify_information_chain_rule(const JointTable& system, const AxisSet& target,
                                                 const std::vector<AxisSet>& sources);
VerificationReport verify_identity_lemma1(const JointTable& system, const std::vector<AxisSet>& parts,
                                          const AxisSet& conditioner);
VerificationReport verify_chain_rule_lemma2(const JointTable& system, const SystemLayout& layout,
                                            const ChainRuleSelection& selection);
// Default selection: groups {0}, ..., {N-2}, chained N-1, no conditioners.
VerificationReport verify_chain_rule_lemma2(const JointTable& system, const SystemLayout& layout);
VerificationReport verify_joint_entropy_decomposition(const JointTable& system,
                                                      const SystemLayout& layout);
// Group co-information against its full lattice sum.
VerificationReport verify_lattice_sum(const JointTable& system, const SystemLayout& layout,
                                      const std::vector<std::size_t>& variables);
// The first k variables are focal; `times` gives each variable's t_i
// (defaults to T for all).
VerificationReport verify_partial_expansion(const JointTable& system, const SystemLayout& layout,
                                            std::size_t k,
                                            std::optional<std::vector<std::size_t>> times = std::nullopt);

}  // namespace infoflow
