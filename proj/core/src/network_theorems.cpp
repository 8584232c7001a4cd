#include "infoflow/network_theorems.hpp"

#include <algorithm>
#include <string>

namespace infoflow {

CumulativeNetwork cumulative_network(const JointTable& system, const SystemLayout& layout) {
  InformationLattice lattice(system, layout);
  EntropyCache& cache = lattice.cache();
  const std::size_t n = layout.n_vars();
  const std::size_t T = layout.t_steps();

  auto past = [&](std::size_t v, std::size_t t) { return lattice.history(v, 1, t - 1); };
  auto pasts_except = [&](std::size_t t, std::size_t skip) {
    AxisSet out;
    for (std::size_t v = 0; v < n; ++v) {
      if (v != skip) out = out | past(v, t);
    }
    return out;
  };
  auto now = [&](std::size_t v, std::size_t t) { return AxisSet::single(lattice.position(v, t)); };

  CumulativeNetwork net;
  net.n_vars = n;
  net.entropy_rate.assign(n, 0.0);
  net.free_entropy.assign(n, 0.0);
  net.mte.assign(n, std::vector<double>(n, 0.0));
  net.pte.assign(n, std::vector<double>(n, 0.0));
  net.pair_residual.assign(n, std::vector<double>(n, 0.0));
  net.single_residual.assign(n, 0.0);

  for (std::size_t t = 1; t <= T; ++t) {
    const AxisSet full_past = pasts_except(t, n);
    AxisSet presents;
    for (std::size_t i = 0; i < n; ++i) {
      presents = presents | now(i, t);
      net.entropy_rate[i] += cache.conditional(now(i, t), past(i, t));
      const double f = cache.conditional(now(i, t), full_past);
      net.free_entropy[i] += f;
      net.simultaneous_correlation += f;
      net.single_residual[i] += cache.conditional(now(i, t), pasts_except(t, i));
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        net.mte[j][i] += cache.conditional_mutual_information(now(i, t), past(j, t), pasts_except(t, j));
        net.pte[j][i] += cache.conditional_mutual_information(now(i, t), past(j, t), past(i, t));
        if (j > i) {
          const double r = cache.conditional_mutual_information(now(i, t), now(j, t), full_past);
          net.pair_residual[i][j] += r;
          net.pair_residual[j][i] += r;
        }
      }
    }
    net.simultaneous_correlation -= cache.conditional(presents, full_past);
    if (n >= 3) {
      std::vector<AxisSet> parts;
      for (std::size_t i = 0; i < n; ++i) parts.push_back(now(i, t));
      net.global_residual += cache.coinformation(parts, full_past);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) net.single_residual[i] -= net.mte[j][i];
    }
  }

  AxisSet everything;
  double marginal_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    everything = everything | lattice.full_history(i);
    marginal_sum += cache.joint(lattice.full_history(i));
  }
  net.joint_entropy = cache.joint(everything);
  net.total_correlation = marginal_sum - net.joint_entropy;
  if (n == 2) {
    net.mutual_information = cache.mutual_information(lattice.full_history(0), lattice.full_history(1));
  }
  return net;
}

namespace {

VerificationReport soft(VerificationReport r) {
  r.hard = false;
  return r;
}

}  // namespace

std::vector<VerificationReport> verify_network_theorems(const JointTable& system,
                                                        const SystemLayout& layout) {
  const CumulativeNetwork net = cumulative_network(system, layout);
  const std::size_t n = net.n_vars;
  std::vector<VerificationReport> out;

  if (n == 2) {
    const double flows = net.mte[0][1] + net.mte[1][0];
    out.push_back(VerificationReport::equality("bivariate_closure", net.mutual_information,
                                               flows + net.pair_residual[0][1], kIdentityTolerance));
    out.push_back(VerificationReport::at_least("marko_inequality",
                                               std::min(net.entropy_rate[0], net.entropy_rate[1]),
                                               flows, kInequalityTolerance));
  }

  double pair_sum = 0.0;
  double single_sum = 0.0;
  double flow_closure = net.simultaneous_correlation;
  for (std::size_t i = 0; i < n; ++i) {
    double incoming = 0.0;
    double outgoing = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      incoming += net.mte[j][i];
      outgoing += net.mte[i][j];
      if (j < i) pair_sum += net.mte[i][j] + net.mte[j][i] + net.pair_residual[i][j];
    }
    const std::string tag = "_" + std::to_string(i);
    const double drop = net.entropy_rate[i] - net.free_entropy[i];
    single_sum += net.single_residual[i];
    flow_closure += drop;

    out.push_back(VerificationReport::at_least("outgoing_flow_bound" + tag, net.entropy_rate[i],
                                               outgoing, kInequalityTolerance));
    VerificationReport bound =
        VerificationReport::at_least("incoming_flow_bound" + tag, drop, incoming, kInequalityTolerance);
    VerificationReport balance =
        VerificationReport::equality("incoming_flow_balance" + tag, drop, incoming, kIdentityTolerance);
    // Both close for two variables only.
    bound.hard = balance.hard = n == 2;
    out.push_back(bound);
    out.push_back(balance);
    out.push_back(soft(VerificationReport::equality("incoming_flow_balance_with_residual" + tag, drop,
                                                    incoming + net.single_residual[i],
                                                    kIdentityTolerance)));
  }

  VerificationReport pairwise = VerificationReport::equality(
      "total_correlation_pairwise_flows", net.total_correlation, pair_sum, kIdentityTolerance);
  // Closes for two variables only.
  if (n != 2) pairwise.hard = false;
  out.push_back(pairwise);
  out.push_back(soft(VerificationReport::equality(
      "total_correlation_flows_and_residuals", net.total_correlation,
      net.global_residual + single_sum + pair_sum, kIdentityTolerance)));
  out.push_back(VerificationReport::equality("total_correlation_flow_closure", net.total_correlation,
                                             flow_closure, kIdentityTolerance));
  return out;
}

}  // namespace infoflow
