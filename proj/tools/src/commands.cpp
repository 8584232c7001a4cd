#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "cli_support.hpp"
#include "infoflow/ctml.hpp"
#include "infoflow/error.hpp"
#include "infoflow/estimation.hpp"
#include "infoflow/experiments.hpp"
#include "infoflow/lorenz.hpp"
#include "infoflow/network_theorems.hpp"
#include "infoflow/series.hpp"
#include "infoflow/significance.hpp"
#include "infoflow/topology.hpp"

namespace infoflow::cli {

namespace {

template <class T>
std::string default_text(const T& value) {
  if constexpr (std::is_floating_point_v<T>) {
    return format_number(value);
  } else if constexpr (std::is_integral_v<T>) {
    return std::to_string(value);
  } else {
    return std::string(value);
  }
}

CLI::App* subcommand(CLI::App& parent, const std::string& name, const std::string& description) {
  CLI::App* sub = parent.add_subcommand(name, description);
  return sub;
}

std::string command_path(const CLI::App* app) {
  std::string path = app->get_name();
  for (const CLI::App* p = app->get_parent(); p && p->get_parent(); p = p->get_parent()) {
    path = p->get_name() + " " + path;
  }
  return path;
}

void warn_constant(const Symbolization& s, const std::vector<std::string>& names) {
  for (std::size_t v : s.constant_variables) {
    std::cerr << "warning: ConstantSeries: variable '" << names[v]
              << "' is constant; its median split is degenerate (all symbols 1)\n";
  }
}

// Loads a series as symbols: pre-symbolized integer CSV or real CSV split
// into `bins` quantile bins.
SymbolSeries load_symbols(const std::string& path, bool presymbolized, std::size_t bins) {
  if (presymbolized) return read_symbol_csv(path);
  const RealSeries series = read_real_csv(path);
  Symbolization s = symbolize_quantile(series, bins);
  warn_constant(s, series.names());
  return std::move(s.symbols);
}

Conditioning mode_option(const std::string& text) { return parse_conditioning(text); }

void add_mode(CLI::App* sub, std::string& mode) {
  sub->add_option("--mode", mode, "Conditioning: mte (multivariate) or pte (pairwise)")
      ->check(CLI::IsMember({"mte", "pte"}))
      ->default_str(default_text(mode));
}

void add_seed(CLI::App* sub, std::uint64_t& seed) {
  sub->add_option("--seed", seed, "Master seed")->default_str(default_text(seed));
}

void write_json(const std::string& path, const nlohmann::json& j) {
  Output out(path);
  out.stream() << j.dump(2) << '\n';
}

// ---- simulate ------------------------------------------------------------

struct LorenzArgs {
  LorenzParams params;
  std::size_t samples = 300000;
  double resample_dt = 0.02;
  std::uint64_t seed = 1;
  std::string output;
};

void add_simulate(CLI::App& app, int& exit_code) {
  CLI::App* simulate = app.add_subcommand("simulate", "Generate benchmark time series");
  simulate->require_subcommand(1);

  auto la = std::make_shared<LorenzArgs>();
  CLI::App* lorenz = subcommand(*simulate, "lorenz", "Lorenz system, RK4 with linear resampling");
  lorenz->add_option("--samples", la->samples, "Number of resampled points")->default_str(default_text(la->samples));
  lorenz->add_option("--resample-dt", la->resample_dt, "Resampling interval")->default_str(default_text(la->resample_dt));
  lorenz->add_option("--sigma", la->params.sigma)->default_str(default_text(la->params.sigma));
  lorenz->add_option("--rho", la->params.rho)->default_str(default_text(la->params.rho));
  lorenz->add_option("--beta", la->params.beta)->default_str(default_text(la->params.beta));
  lorenz->add_option("--t0", la->params.t0, "Transient cutoff")->default_str(default_text(la->params.t0));
  lorenz->add_option("--t1", la->params.t1, "End of each trajectory")->default_str(default_text(la->params.t1));
  lorenz->add_option("--dt-integrate", la->params.dt_integrate, "RK4 step")->default_str(default_text(la->params.dt_integrate));
  lorenz->add_option("--perturbation", la->params.perturbation, "Initial perturbation width")
      ->default_str(default_text(la->params.perturbation));
  add_seed(lorenz, la->seed);
  lorenz->add_option("--output", la->output, "CSV path (stdout if omitted)");
  lorenz->callback([la, lorenz, &exit_code] {
    const auto config = run_config(*lorenz, command_path(lorenz));
    const RealSeries series = lorenz_generate(la->params, la->resample_dt, la->samples, la->seed);
    Output out(la->output);
    write_real_csv(out.stream(), series, {config_comment(config)});
    exit_code = kExitOk;
  });

  struct CtmlArgs {
    std::size_t n_vars = 3;
    std::string edges;
    std::string graph;
    std::optional<std::size_t> case_index;
    CtmlConfig config;
    std::string output;
  };
  auto ca = std::make_shared<CtmlArgs>();
  CLI::App* ctml = subcommand(*simulate, "ctml", "Coupled tent map lattice");
  ctml->add_option("--n-vars", ca->n_vars, "Number of variables")->default_str(default_text(ca->n_vars));
  ctml->add_option("--edges", ca->edges, "Edges as from>to pairs, e.g. 0>1,2>1");
  ctml->add_option("--graph", ca->graph, "Graph JSON file {n_vars, edges}");
  ctml->add_option("--case", ca->case_index, "Index into the canonical topology list");
  ctml->add_option("--epsilon", ca->config.epsilon, "Coupling")->default_str(default_text(ca->config.epsilon));
  ctml->add_option("--noise", ca->config.noise_amplitude, "Noise amplitude r")->default_str(default_text(ca->config.noise_amplitude));
  ctml->add_option("--steps", ca->config.steps)->default_str(default_text(ca->config.steps));
  ctml->add_option("--burn-in", ca->config.burn_in)->default_str(default_text(ca->config.burn_in));
  ctml->add_option("--dither", ca->config.dither, "Low-bit dither size (0 disables)")->default_str(default_text(ca->config.dither));
  add_seed(ctml, ca->config.seed);
  ctml->add_option("--output", ca->output, "CSV path (stdout if omitted)");
  ctml->callback([ca, ctml, &exit_code] {
    if (!ca->graph.empty()) {
      std::ifstream in(ca->graph);
      if (!in) throw Error(Errc::kParseError, "cannot open '" + ca->graph + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::kParseError, e.what());
      }
      ca->config.topology = j.get<DependencyGraph>();
    } else if (ca->case_index) {
      const auto classes = enumerate_topologies(ca->n_vars);
      if (*ca->case_index >= classes.size()) throw Error(Errc::kInvalidArgument, "--case out of range");
      ca->config.topology = classes[*ca->case_index].representative;
    } else {
      DependencyGraph g(ca->n_vars);
      for (const auto& e : split_list({ca->edges})) {
        const auto sep = e.find('>');
        if (sep == std::string::npos) throw Error(Errc::kInvalidArgument, "edge '" + e + "' is not from>to");
        g.set_edge(std::stoul(e.substr(0, sep)), std::stoul(e.substr(sep + 1)));
      }
      ca->config.topology = g;
    }
    auto config = run_config(*ctml, command_path(ctml));
    config["topology"] = ca->config.topology;
    const RealSeries series = ctml_generate(ca->config);
    Output out(ca->output);
    write_real_csv(out.stream(), series, {config_comment(config)});
    exit_code = kExitOk;
  });
}

// ---- symbolize -----------------------------------------------------------

void add_symbolize(CLI::App& app, int& exit_code) {
  struct Args {
    std::string input;
    std::size_t bins = 2;
    std::string output;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = subcommand(app, "symbolize", "Median or quantile split of a real-valued CSV");
  sub->add_option("--input", a->input, "Time-series CSV")->required();
  sub->add_option("--bins", a->bins, "Symbols per variable (2 = median split)")->default_str(default_text(a->bins));
  sub->add_option("--output", a->output, "CSV path (stdout if omitted)");
  sub->callback([a, sub, &exit_code] {
    const auto config = run_config(*sub, command_path(sub));
    const RealSeries series = read_real_csv(a->input);
    const Symbolization s = symbolize_quantile(series, a->bins);
    warn_constant(s, series.names());
    Output out(a->output);
    write_symbol_csv(out.stream(), s.symbols, {config_comment(config)});
    exit_code = kExitOk;
  });
}

// ---- network -------------------------------------------------------------

void add_network(CLI::App& app, int& exit_code) {
  struct Args {
    std::string input;
    bool symbols = false;
    std::size_t order = 1;
    std::size_t lag = 1;
    std::size_t bins = 2;
    std::string mode = "mte";
    std::string output;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = subcommand(app, "network", "Estimate the full information network of a series");
  sub->add_option("--input", a->input, "Time-series CSV")->required();
  sub->add_flag("--symbols", a->symbols, "Input is a pre-symbolized integer CSV");
  sub->add_option("--order", a->order, "Markov order K")->default_str(default_text(a->order));
  sub->add_option("--lag", a->lag, "Steps between window points")->default_str(default_text(a->lag));
  sub->add_option("--bins", a->bins, "Quantile bins for real input")->default_str(default_text(a->bins));
  add_mode(sub, a->mode);
  sub->add_option("--output", a->output, "JSON path (stdout if omitted)");
  sub->callback([a, sub, &exit_code] {
    const auto config = run_config(*sub, command_path(sub));
    const SymbolSeries symbols = load_symbols(a->input, a->symbols, a->bins);
    const InfoNetwork network = estimate_network(symbols, a->order, a->lag, mode_option(a->mode));
    nlohmann::json j = network;
    j["variables"] = symbols.names();
    j["config"] = config;
    write_json(a->output, j);
    exit_code = kExitOk;
  });
}

// ---- infer ---------------------------------------------------------------

PValueMethod method_option(const std::string& text) {
  return text == "gamma" ? PValueMethod::kGamma : PValueMethod::kEmpirical;
}

void add_inference_options(CLI::App* sub, InferenceOptions& o, std::string& mode, std::string& method) {
  sub->add_option("--order", o.order, "Markov order K")->default_str(default_text(o.order));
  add_mode(sub, mode);
  sub->add_option("--alpha", o.alpha, "Significance level (edge iff p <= alpha)")->default_str(default_text(o.alpha));
  sub->add_option("--surrogates", o.n_surrogates, "Circular-shift surrogates per pair")
      ->check(CLI::Range(std::size_t{kMinSurrogates}, std::size_t{1} << 20))
      ->default_str(default_text(o.n_surrogates));
  sub->add_option("--method", method, "p-value method: empirical or gamma")
      ->check(CLI::IsMember({"empirical", "gamma"}))
      ->default_str(default_text(method));
}

void add_infer(CLI::App& app, int& exit_code) {
  struct Args {
    std::string input;
    bool symbols = false;
    std::size_t bins = 2;
    InferenceOptions options;
    std::string mode = "mte";
    std::string method = "empirical";
    std::uint64_t seed = 1;
    std::string truth;
    std::string output;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = subcommand(app, "infer", "Infer a dependency graph with surrogate tests");
  sub->add_option("--input", a->input, "Time-series CSV")->required();
  sub->add_flag("--symbols", a->symbols, "Input is a pre-symbolized integer CSV");
  sub->add_option("--bins", a->bins, "Quantile bins for real input")->default_str(default_text(a->bins));
  sub->add_option("--lag", a->options.lag, "Steps between window points")->default_str(default_text(a->options.lag));
  add_inference_options(sub, a->options, a->mode, a->method);
  add_seed(sub, a->seed);
  sub->add_option("--truth", a->truth, "Ground-truth graph JSON; adds a score");
  sub->add_option("--output", a->output, "JSON path (stdout if omitted)");
  sub->callback([a, sub, &exit_code] {
    const auto config = run_config(*sub, command_path(sub));
    const SymbolSeries symbols = load_symbols(a->input, a->symbols, a->bins);
    a->options.mode = mode_option(a->mode);
    a->options.method = method_option(a->method);
    const InferenceReport report = infer_graph(symbols, a->options, a->seed);
    nlohmann::json j = report;
    j["variables"] = symbols.names();
    j["config"] = config;
    if (!a->truth.empty()) {
      std::ifstream in(a->truth);
      if (!in) throw Error(Errc::kParseError, "cannot open '" + a->truth + "'");
      nlohmann::json t;
      try {
        in >> t;
      } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::kParseError, e.what());
      }
      const DependencyGraph truth = t.get<DependencyGraph>();
      const std::vector<DependencyGraph> est{report.graph};
      const std::vector<DependencyGraph> tru{truth};
      j["score"] = score_inference(est, tru);
    }
    write_json(a->output, j);
    exit_code = kExitOk;
  });
}

// ---- lag-sweep -----------------------------------------------------------

void write_sweep(const std::string& path, const nlohmann::json& config, const std::vector<SweepRow>& rows,
                 const std::vector<std::string>& names) {
  Output out(path);
  out.stream() << "# " << config_comment(config) << '\n';
  out.stream() << "lag,from,to,statistic_bits,p_value,significant\n";
  for (const SweepRow& r : rows) {
    out.stream() << format_number(r.lag) << ',' << names[r.from] << ',' << names[r.to] << ','
                 << format_number(r.statistic_bits) << ',' << format_number(r.p_value) << ','
                 << (r.significant ? "true" : "false") << '\n';
  }
}

void add_lag_sweep(CLI::App& app, int& exit_code) {
  struct Args {
    std::string input;
    bool symbols = false;
    bool lorenz = false;
    std::vector<std::string> lags;
    std::size_t bins = 2;
    std::size_t samples = 300000;
    InferenceOptions options;
    std::string mode = "mte";
    std::string method = "empirical";
    std::uint64_t seed = 1;
    std::string output;
  };
  auto a = std::make_shared<Args>();
  a->options.order = 1;
  CLI::App* sub = subcommand(app, "lag-sweep", "Directed-pair statistics as a function of the lag");
  sub->add_option("--input", a->input, "Time-series CSV (lags in samples)");
  sub->add_flag("--symbols", a->symbols, "Input is a pre-symbolized integer CSV");
  sub->add_flag("--lorenz", a->lorenz, "Simulate the Lorenz system (lags in time units)");
  sub->add_option("--lags", a->lags, "Comma-separated lag list")->required()->expected(1, 1 << 16);
  sub->add_option("--bins", a->bins, "Quantile bins for real input")->default_str(default_text(a->bins));
  sub->add_option("--samples", a->samples, "Lorenz samples per lag")->default_str(default_text(a->samples));
  add_inference_options(sub, a->options, a->mode, a->method);
  add_seed(sub, a->seed);
  sub->add_option("--output", a->output, "CSV path (stdout if omitted)");
  sub->callback([a, sub, &exit_code] {
    if (a->lorenz == !a->input.empty()) {
      throw CLI::ValidationError("lag-sweep", "give exactly one of --input and --lorenz");
    }
    const auto config = run_config(*sub, command_path(sub));
    const auto lag_text = split_list(a->lags);
    a->options.mode = mode_option(a->mode);
    a->options.method = method_option(a->method);
    if (a->lorenz) {
      LorenzSweepOptions o;
      o.lags.clear();
      for (const auto& l : lag_text) o.lags.push_back(std::stod(l));
      o.samples = a->samples;
      o.order = a->options.order;
      o.mode = a->options.mode;
      o.alpha = a->options.alpha;
      o.surrogates = a->options.n_surrogates;
      o.seed = a->seed;
      write_sweep(a->output, config, run_lorenz_sweep(o), {"x", "y", "z"});
    } else {
      const SymbolSeries symbols = load_symbols(a->input, a->symbols, a->bins);
      std::vector<std::size_t> lags;
      for (const auto& l : lag_text) lags.push_back(std::stoul(l));
      write_sweep(a->output, config, run_series_sweep(symbols, lags, a->options, a->seed), symbols.names());
    }
    exit_code = kExitOk;
  });
}

// ---- bench-table1 --------------------------------------------------------

void add_bench_table1(CLI::App& app, int& exit_code) {
  struct Args {
    Table1Options options;
    std::size_t case_limit = 40;
    bool all_cases = false;
    std::string output;
    std::string cases_output;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = subcommand(app, "bench-table1", "CTML topology inference benchmark (MTE vs PTE)");
  sub->add_option("--n-vars", a->options.n_vars, "Variables (3..5)")->default_str(default_text(a->options.n_vars));
  sub->add_option("--epsilon", a->options.epsilon)->default_str(default_text(a->options.epsilon));
  sub->add_option("--noise", a->options.noise, "Noise amplitude r")->default_str(default_text(a->options.noise));
  sub->add_option("--steps", a->options.steps)->default_str(default_text(a->options.steps));
  sub->add_option("--burn-in", a->options.burn_in)->default_str(default_text(a->options.burn_in));
  sub->add_option("--order", a->options.order, "Markov order K")->default_str(default_text(a->options.order));
  sub->add_option("--lag", a->options.lag)->default_str(default_text(a->options.lag));
  sub->add_option("--alpha", a->options.alpha)->default_str(default_text(a->options.alpha));
  sub->add_option("--surrogates", a->options.surrogates)
      ->check(CLI::Range(std::size_t{kMinSurrogates}, std::size_t{1} << 20))
      ->default_str(default_text(a->options.surrogates));
  sub->add_option("--case-limit", a->case_limit, "Seeded case subset size for N >= 4")->default_str(default_text(a->case_limit));
  sub->add_flag("--all-cases", a->all_cases, "Run every canonical case regardless of N");
  add_seed(sub, a->options.seed);
  sub->add_option("--output", a->output, "Score JSON path (stdout if omitted)");
  sub->add_option("--cases-output", a->cases_output, "Per-case CSV path");
  sub->callback([a, sub, &exit_code] {
    if (a->options.n_vars < 3) throw Error(Errc::kInvalidArgument, "bench-table1 needs 3 to 5 variables");
    if (a->options.n_vars > kMaxTopologyVars) throw Error(Errc::kNTooLarge, "bench-table1 supports at most 5 variables");
    const auto config = run_config(*sub, command_path(sub));
    if (!a->all_cases && a->options.n_vars >= 4) a->options.case_limit = a->case_limit;
    const Table1Result result = run_table1(a->options);
    nlohmann::json j{{"config", config},
                     {"total_cases", result.total_cases},
                     {"evaluated_cases", result.cases.size()},
                     {"mte", result.mte_score},
                     {"pte", result.pte_score}};
    write_json(a->output, j);
    if (!a->cases_output.empty()) {
      Output out(a->cases_output);
      out.stream() << "# " << config_comment(config) << '\n'
                   << "case,code,class_size,truth_edges,mte_edges,pte_edges,mte_correct,pte_correct\n";
      for (const Table1Case& c : result.cases) {
        out.stream() << c.index << ',' << c.truth.code() << ',' << c.class_size << ','
                     << c.truth.edge_count() << ',' << c.mte.graph.edge_count() << ','
                     << c.pte.graph.edge_count() << ',' << (c.mte.graph == c.truth ? "true" : "false")
                     << ',' << (c.pte.graph == c.truth ? "true" : "false") << '\n';
      }
    }
    exit_code = kExitOk;
  });
}

// ---- verify --------------------------------------------------------------

void add_verify(CLI::App& app, int& exit_code) {
  struct Args {
    std::string suite = "lemmas";
    std::size_t trials = 200;
    std::size_t n_vars = 3;
    std::size_t t_steps = 2;
    std::size_t arity = 2;
    std::uint64_t seed = 1;
    std::string output;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = subcommand(app, "verify", "Check identities and theorems on random exact systems");
  sub->add_option("--suite", a->suite, "lemmas or network")
      ->check(CLI::IsMember({"lemmas", "network"}))
      ->default_str(default_text(a->suite));
  sub->add_option("--trials", a->trials)->default_str(default_text(a->trials));
  sub->add_option("--n-vars", a->n_vars)->default_str(default_text(a->n_vars));
  sub->add_option("--t-steps", a->t_steps)->default_str(default_text(a->t_steps));
  sub->add_option("--arity", a->arity)->default_str(default_text(a->arity));
  add_seed(sub, a->seed);
  sub->add_option("--output", a->output, "JSON path (stdout if omitted)");
  sub->callback([a, sub, &exit_code] {
    const auto config = run_config(*sub, command_path(sub));
    const auto suite = a->suite == "network" ? VerificationSuite::kNetwork : VerificationSuite::kLemmas;
    const VerificationSuiteResult result =
        run_verification_suite(suite, a->trials, SystemLayout(a->n_vars, a->t_steps), a->arity, a->seed);
    nlohmann::json j = result;
    j["config"] = config;
    write_json(a->output, j);
    exit_code = result.all_hard_passed() ? kExitOk : kExitVerification;
  });
}

// ---- topologies ----------------------------------------------------------

void add_topologies(CLI::App& app, int& exit_code) {
  struct Args {
    std::size_t n_vars = 3;
    std::string output;
  };
  auto a = std::make_shared<Args>();
  CLI::App* sub = subcommand(app, "topologies", "Canonical dependency topologies up to relabelling");
  sub->add_option("--n-vars", a->n_vars, "Variables (2..5)")->default_str(default_text(a->n_vars));
  sub->add_option("--output", a->output, "JSON path (stdout if omitted)");
  sub->callback([a, sub, &exit_code] {
    const auto config = run_config(*sub, command_path(sub));
    const auto classes = enumerate_topologies(a->n_vars);
    nlohmann::json list = nlohmann::json::array();
    std::uint64_t total = 0;
    for (const TopologyClass& c : classes) {
      total += c.class_size;
      list.push_back({{"code", c.representative.code()},
                      {"class_size", c.class_size},
                      {"graph", c.representative}});
    }
    write_json(a->output, {{"config", config},
                           {"n_vars", a->n_vars},
                           {"class_count", classes.size()},
                           {"matrix_count", total},
                           {"classes", list}});
    exit_code = kExitOk;
  });
}

}  // namespace

void add_commands(CLI::App& app, int& exit_code) {
  add_simulate(app, exit_code);
  add_symbolize(app, exit_code);
  add_network(app, exit_code);
  add_infer(app, exit_code);
  add_lag_sweep(app, exit_code);
  add_bench_table1(app, exit_code);
  add_verify(app, exit_code);
  add_topologies(app, exit_code);
}

}  // namespace infoflow::cli
