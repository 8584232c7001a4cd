#include "infoflow/experiments.hpp"

#include <algorithm>
#include <numeric>

#include "infoflow/ctml.hpp"
#include "infoflow/error.hpp"
#include "infoflow/estimation.hpp"
#include "infoflow/network_theorems.hpp"
#include "infoflow/rng.hpp"

namespace infoflow {

std::vector<VerificationReport> verify_lattice_identities(const JointTable& system,
                                                          const SystemLayout& layout,
                                                          std::uint64_t seed) {
  const std::size_t n = layout.n_vars();
  const std::size_t T = layout.t_steps();
  InformationLattice lattice(system, layout);
  std::vector<VerificationReport> out;

  std::vector<std::size_t> axes(system.rank());
  std::iota(axes.begin(), axes.end(), 0);
  out.push_back(verify_entropy_chain_rule(system, axes));
  Rng rng(seed);
  for (std::size_t k = axes.size(); k > 1; --k) std::swap(axes[k - 1], axes[rng.below(k)]);
  VerificationReport shuffled = verify_entropy_chain_rule(system, axes);
  shuffled.identity += "_shuffled";
  out.push_back(shuffled);

  if (n >= 2) {
    std::vector<AxisSet> sources;
    for (std::size_t v = 1; v < n; ++v) sources.push_back(lattice.full_history(v));
    if (T >= 2) sources.push_back(lattice.history(0, 1, T - 1));
    out.push_back(verify_information_chain_rule(
        system, AxisSet::single(lattice.position(0, T)), sources));
  }

  if (n >= 3) {
    std::vector<AxisSet> parts;
    for (std::size_t v = 0; v + 1 < n; ++v) parts.push_back(lattice.full_history(v));
    out.push_back(verify_identity_lemma1(system, parts, lattice.full_history(n - 1)));
  } else if (n == 2 && T >= 2) {
    out.push_back(verify_identity_lemma1(
        system, {AxisSet::single(lattice.position(0, T)), AxisSet::single(lattice.position(1, T))},
        lattice.history(0, 1, T - 1) | lattice.history(1, 1, T - 1)));
  }

  if (n >= 2) {
    out.push_back(verify_chain_rule_lemma2(system, layout));
    if (n >= 3) {
      ChainRuleSelection sel;
      sel.groups = {{0}};
      sel.chained = 1;
      for (std::size_t v = 2; v < n; ++v) sel.conditioners.push_back(v);
      VerificationReport r = verify_chain_rule_lemma2(system, layout, sel);
      r.identity += "_conditioned";
      out.push_back(r);
    }
  }

  out.push_back(verify_joint_entropy_decomposition(system, layout));
  std::vector<std::size_t> everyone(n);
  std::iota(everyone.begin(), everyone.end(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    VerificationReport r = verify_lattice_sum(system, layout, {v});
    r.identity += "_single";
    out.push_back(r);
  }
  if (n >= 2) out.push_back(verify_lattice_sum(system, layout, everyone));

  std::vector<std::size_t> ks{1, 2, n};
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (std::size_t k : ks) {
    if (k > n) continue;
    out.push_back(verify_partial_expansion(system, layout, k));
    if (T >= 2) {
      // Unequal time indices: t_i cycles through 1..T.
      std::vector<std::size_t> times(n);
      for (std::size_t v = 0; v < n; ++v) times[v] = 1 + (v + T - 1) % T;
      VerificationReport r = verify_partial_expansion(system, layout, k, times);
      r.identity += "_mixed_times";
      out.push_back(r);
    }
  }
  return out;
}

VerificationSuiteResult run_verification_suite(VerificationSuite suite, std::size_t trials,
                                               const SystemLayout& layout, std::size_t arity,
                                               std::uint64_t seed) {
  VerificationSuiteResult result;
  for (std::size_t k = 0; k < trials; ++k) {
    const std::uint64_t s = derive_seed(seed, {k});
    const JointTable system = random_system(layout, s, arity);
    const auto reports = suite == VerificationSuite::kLemmas
                             ? verify_lattice_identities(system, layout, s)
                             : verify_network_theorems(system, layout);
    for (const VerificationReport& r : reports) {
      auto [it, inserted] = result.summary.try_emplace(r.identity);
      IdentitySummary& sum = it->second;
      if (inserted) {
        result.order.push_back(r.identity);
        sum.hard = r.hard;
        sum.gap_min = sum.gap_max = r.gap;
      }
      sum.gap_min = std::min(sum.gap_min, r.gap);
      sum.gap_max = std::max(sum.gap_max, r.gap);
      sum.gap_mean += r.gap;
      ++(r.passed ? sum.passed : sum.failed);
      if (r.hard && !r.passed) result.hard_failures.push_back(r);
    }
  }
  for (auto& [name, sum] : result.summary) {
    const auto n = sum.passed + sum.failed;
    if (n) sum.gap_mean /= static_cast<double>(n);
  }
  return result;
}

void to_json(nlohmann::json& j, const VerificationSuiteResult& r) {
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& name : r.order) {
    const IdentitySummary& s = r.summary.at(name);
    ids.push_back({{"identity", name},
                   {"hard", s.hard},
                   {"passed", s.passed},
                   {"failed", s.failed},
                   {"gap_min", s.gap_min},
                   {"gap_max", s.gap_max},
                   {"gap_mean", s.gap_mean}});
  }
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t k = 0; k < std::min<std::size_t>(r.hard_failures.size(), 20); ++k) {
    failures.push_back(r.hard_failures[k]);
  }
  j = nlohmann::json{{"all_hard_passed", r.all_hard_passed()},
                     {"hard_failure_count", r.hard_failures.size()},
                     {"identities", ids},
                     {"first_hard_failures", failures}};
}

Table1Result run_table1(const Table1Options& options) {
  const auto classes = enumerate_topologies(options.n_vars);
  Table1Result result;
  result.total_cases = classes.size();
  const std::vector<std::size_t> picked =
      options.case_limit ? select_cases(classes.size(), *options.case_limit, derive_seed(options.seed, {~0ull}))
                         : select_cases(classes.size(), classes.size(), 0);

  InferenceOptions inference;
  inference.order = options.order;
  inference.lag = options.lag;
  inference.alpha = options.alpha;
  inference.n_surrogates = options.surrogates;

  std::vector<DependencyGraph> truths;
  std::vector<DependencyGraph> mte_graphs;
  std::vector<DependencyGraph> pte_graphs;
  for (std::size_t c : picked) {
    CtmlConfig config;
    config.topology = classes[c].representative;
    config.epsilon = options.epsilon;
    config.noise_amplitude = options.noise;
    config.steps = options.steps;
    config.burn_in = options.burn_in;
    config.seed = derive_seed(options.seed, {c, 0});
    const SymbolSeries symbols = symbolize_median(ctml_generate(config)).symbols;

    Table1Case item;
    item.index = c;
    // Without coupling no variable depends on another.
    item.truth = options.epsilon > 0.0 ? config.topology : DependencyGraph(options.n_vars);
    item.class_size = classes[c].class_size;
    const std::uint64_t infer_seed = derive_seed(options.seed, {c, 1});
    inference.mode = Conditioning::kMultivariate;
    item.mte = infer_graph(symbols, inference, infer_seed);
    inference.mode = Conditioning::kPairwise;
    item.pte = infer_graph(symbols, inference, infer_seed);

    truths.push_back(item.truth);
    mte_graphs.push_back(item.mte.graph);
    pte_graphs.push_back(item.pte.graph);
    result.cases.push_back(std::move(item));
  }
  result.mte_score = score_inference(mte_graphs, truths);
  result.pte_score = score_inference(pte_graphs, truths);
  return result;
}

std::vector<SweepRow> run_lorenz_sweep(const LorenzSweepOptions& options) {
  if (options.lags.empty()) throw Error(Errc::kInvalidArgument, "need at least one lag");
  InferenceOptions inference;
  inference.order = options.order;
  inference.lag = 1;
  inference.mode = options.mode;
  inference.alpha = options.alpha;
  inference.n_surrogates = options.surrogates;

  std::vector<SweepRow> rows;
  for (std::size_t l = 0; l < options.lags.size(); ++l) {
    const double dt = options.lags[l];
    const RealSeries series =
        lorenz_generate(options.params, dt, options.samples, derive_seed(options.seed, {0}));
    const SymbolSeries symbols = symbolize_median(series).symbols;
    const InferenceReport report = infer_graph(symbols, inference, derive_seed(options.seed, {1, l}));
    for (const PairResult& p : report.pairs) {
      rows.push_back({dt, p.from, p.to, p.statistic_bits, p.p_value, p.significant});
    }
  }
  return rows;
}

std::vector<SweepRow> run_series_sweep(const SymbolSeries& symbols, const std::vector<std::size_t>& lags,
                                       const InferenceOptions& base, std::uint64_t seed) {
  if (lags.empty()) throw Error(Errc::kInvalidArgument, "need at least one lag");
  std::vector<SweepRow> rows;
  for (std::size_t l = 0; l < lags.size(); ++l) {
    InferenceOptions inference = base;
    inference.lag = lags[l];
    const InferenceReport report = infer_graph(symbols, inference, derive_seed(seed, {1, l}));
    for (const PairResult& p : report.pairs) {
      rows.push_back({static_cast<double>(lags[l]), p.from, p.to, p.statistic_bits, p.p_value, p.significant});
    }
  }
  return rows;
}

}  // namespace infoflow
