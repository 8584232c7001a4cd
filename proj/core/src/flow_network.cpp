#include "infoflow/flow_network.hpp"

#include <algorithm>
#include <string>

#include "infoflow/error.hpp"
#include "infoflow/info_measures.hpp"

namespace infoflow {

std::string_view to_string(Conditioning mode) {
  return mode == Conditioning::kPairwise ? "PAIRWISE" : "MULTIVARIATE";
}

Conditioning parse_conditioning(std::string_view text) {
  if (text == "pte" || text == "PAIRWISE") return Conditioning::kPairwise;
  if (text == "mte" || text == "MULTIVARIATE") return Conditioning::kMultivariate;
  throw Error(Errc::kInvalidArgument, "unknown conditioning mode '" + std::string(text) + "'");
}

namespace {

class Flows {
 public:
  explicit Flows(const ProcessModel& model) : m_(model), cache_(model.window_table()) {}

  void check(std::size_t i) const {
    if (i >= m_.n_vars()) throw Error(Errc::kIndexOutOfRange, "variable index out of range");
  }
  void check_pair(std::size_t a, std::size_t b) const {
    check(a);
    check(b);
    if (a == b) throw Error(Errc::kSelfPair, "pair quantities need two distinct variables");
  }

  double entropy_rate(std::size_t i) {
    check(i);
    return cache_.conditional(m_.present(i), m_.past(i));
  }
  double free_entropy(std::size_t i) {
    check(i);
    return cache_.conditional(m_.present(i), m_.all_pasts());
  }
  double transfer(std::size_t j, std::size_t i, Conditioning mode) {
    check_pair(j, i);
    const AxisSet givens = mode == Conditioning::kPairwise ? m_.past(i) : m_.pasts_except({j});
    return cache_.conditional_mutual_information(m_.present(i), m_.past(j), givens);
  }
  double residual_pair(std::size_t i, std::size_t j) {
    check_pair(i, j);
    // Symmetric by construction: order the arguments.
    const std::size_t a = std::min(i, j);
    const std::size_t b = std::max(i, j);
    return cache_.conditional_mutual_information(m_.present(a), m_.present(b), m_.all_pasts());
  }
  double residual_single(std::size_t i) {
    check(i);
    double value = cache_.conditional(m_.present(i), m_.pasts_except({i}));
    for (std::size_t j = 0; j < m_.n_vars(); ++j) {
      if (j != i) value -= transfer(j, i, Conditioning::kMultivariate);
    }
    return value;
  }
  double residual_global() {
    if (m_.n_vars() < 3) return 0.0;
    std::vector<AxisSet> parts;
    for (std::size_t v = 0; v < m_.n_vars(); ++v) parts.push_back(m_.present(v));
    return cache_.coinformation(parts, m_.all_pasts());
  }
  double total_correlation() {
    double sum = 0.0;
    for (std::size_t v = 0; v < m_.n_vars(); ++v) sum += entropy_rate(v);
    return sum - cache_.conditional(m_.all_presents(), m_.all_pasts());
  }

 private:
  const ProcessModel& m_;
  EntropyCache cache_;
};

}  // namespace

double entropy_rate(const ProcessModel& model, std::size_t i) { return Flows(model).entropy_rate(i); }
double free_entropy(const ProcessModel& model, std::size_t i) { return Flows(model).free_entropy(i); }
double transfer_entropy(const ProcessModel& model, std::size_t j, std::size_t i, Conditioning mode) {
  return Flows(model).transfer(j, i, mode);
}
double residual_pair(const ProcessModel& model, std::size_t i, std::size_t j) {
  return Flows(model).residual_pair(i, j);
}
double residual_single(const ProcessModel& model, std::size_t i) {
  return Flows(model).residual_single(i);
}
double residual_global(const ProcessModel& model) { return Flows(model).residual_global(); }
double total_correlation_rate(const ProcessModel& model) { return Flows(model).total_correlation(); }

InfoNetwork build_network(const ProcessModel& model, Conditioning mode) {
  Flows flows(model);
  const std::size_t n = model.n_vars();
  InfoNetwork net;
  net.n_vars = n;
  net.mode = mode;
  net.transfer.assign(n, std::vector<double>(n, 0.0));
  net.pair_residual.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    net.entropy_rate.push_back(flows.entropy_rate(i));
    net.free_entropy.push_back(flows.free_entropy(i));
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      net.transfer[j][i] = flows.transfer(j, i, mode);
      if (j < i) {
        const double r = flows.residual_pair(j, i);
        net.pair_residual[j][i] = r;
        net.pair_residual[i][j] = r;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) net.single_residual.push_back(flows.residual_single(i));
  net.global_residual = flows.residual_global();
  net.total_correlation = flows.total_correlation();
  return net;
}

void to_json(nlohmann::json& j, const InfoNetwork& network) {
  j = nlohmann::json{{"n_vars", network.n_vars},
                     {"mode", std::string(to_string(network.mode))},
                     {"units", "bits/step"},
                     {"entropy_rate", network.entropy_rate},
                     {"free_entropy", network.free_entropy},
                     {"transfer", network.transfer},
                     {"pair_residual", network.pair_residual},
                     {"single_residual", network.single_residual},
                     {"global_residual", network.global_residual},
                     {"total_correlation", network.total_correlation}};
}

}  // namespace infoflow
