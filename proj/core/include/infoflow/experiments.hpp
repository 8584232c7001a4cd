#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infoflow/lattice.hpp"
#include "infoflow/lorenz.hpp"
#include "infoflow/significance.hpp"
#include "infoflow/topology.hpp"

namespace infoflow {

// Every lattice identity verifier on one exact system: entropy chain rule
// (natural and seeded-shuffled axis order), information chain rule, the
// conditional co-information identity, the per-variable chain rule, the
// joint-entropy decomposition, group lattice sums and partial expansion for
// k in {1, 2, N}. Identities that need more variables or steps than the
// layout offers are skipped.
std::vector<VerificationReport> verify_lattice_identities(const JointTable& system,
                                                          const SystemLayout& layout,
                                                          std::uint64_t seed);

// Per-identity summary over many trials.
struct IdentitySummary {
  bool hard = true;
  std::size_t passed = 0;
  std::size_t failed = 0;
  double gap_min = 0.0;
  double gap_max = 0.0;
  double gap_mean = 0.0;
};

struct VerificationSuiteResult {
  std::vector<std::string> order;  // identities in first-seen order
  std::map<std::string, IdentitySummary> summary;
  std::vector<VerificationReport> hard_failures;
  bool all_hard_passed() const noexcept { return hard_failures.empty(); }
};

enum class VerificationSuite { kLemmas, kNetwork };

// Random Dirichlet systems, trial k seeded with stream {k} of `seed`.
VerificationSuiteResult run_verification_suite(VerificationSuite suite, std::size_t trials,
                                               const SystemLayout& layout, std::size_t arity,
                                               std::uint64_t seed);

void to_json(nlohmann::json& j, const VerificationSuiteResult& r);

struct Table1Options {
  std::size_t n_vars = 3;
  double epsilon = 0.2;
  double noise = 0.0;
  std::size_t steps = 100000;
  std::size_t burn_in = 1000;
  std::size_t order = 3;
  std::size_t lag = 1;
  double alpha = kDefaultAlpha;
  std::size_t surrogates = kDefaultSurrogates;
  // Seeded subset of canonical cases; nullopt runs every case.
  std::optional<std::size_t> case_limit;
  std::uint64_t seed = 1;
};

struct Table1Case {
  std::size_t index = 0;  // position in enumerate_topologies order
  DependencyGraph truth;
  std::uint64_t class_size = 0;
  InferenceReport mte;
  InferenceReport pte;
};

struct Table1Result {
  std::size_t total_cases = 0;
  std::vector<Table1Case> cases;
  InferenceScore mte_score;
  InferenceScore pte_score;
};

// Case c simulates with seed stream {c, 0} and infers with {c, 1}; the case
// subset is drawn from stream {~0} of options.seed.
Table1Result run_table1(const Table1Options& options);

struct SweepRow {
  double lag = 0.0;
  std::size_t from = 0;
  std::size_t to = 0;
  double statistic_bits = 0.0;
  double p_value = 1.0;
  bool significant = false;
};

struct LorenzSweepOptions {
  LorenzParams params;
  std::vector<double> lags{0.02, 0.04, 0.06, 0.08, 0.10};
  std::size_t samples = 300000;
  std::size_t order = 1;
  Conditioning mode = Conditioning::kMultivariate;
  double alpha = kDefaultAlpha;
  std::size_t surrogates = kDefaultSurrogates;
  std::uint64_t seed = 1;
};

// For each lag dt: trajectories resampled at dt (stream {0} of the seed, so
// every lag sees the same trajectories), median split, inference at a lag of
// one sample (stream {1, lag index}).
std::vector<SweepRow> run_lorenz_sweep(const LorenzSweepOptions& options);

// Sweep over integer sample lags of a given symbol series.
std::vector<SweepRow> run_series_sweep(const SymbolSeries& symbols, const std::vector<std::size_t>& lags,
                                       const InferenceOptions& base, std::uint64_t seed);

}  // namespace infoflow
