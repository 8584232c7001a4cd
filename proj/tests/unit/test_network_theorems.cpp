#include <gtest/gtest.h>

#include <algorithm>

#include "infoflow/network_theorems.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace infoflow;

namespace {

const VerificationReport& find(const std::vector<VerificationReport>& rs, const std::string& name) {
  const auto it = std::find_if(rs.begin(), rs.end(), [&](const auto& r) { return r.identity == name; });
  if (it == rs.end()) throw std::runtime_error("missing report " + name);
  return *it;
}

}  // namespace

TEST(CumulativeNetwork, MatchesOracle) {
  const SystemLayout l(2, 2);
  const JointTable sys = random_system(l, 12);
  const CumulativeNetwork n = cumulative_network(sys, l);
  // axes: X1 X2 Y1 Y2
  EXPECT_NEAR(n.entropy_rate[0], oracle::H(sys, {0, 1}), 1e-12);
  EXPECT_NEAR(n.mutual_information, oracle::cmi(sys, {0, 1}, {2, 3}), 1e-12);
  EXPECT_NEAR(n.free_entropy[1], oracle::H(sys, {2}) + oracle::cond_H(sys, {3}, {0, 2}), 1e-12);
  EXPECT_NEAR(n.mte[0][1], oracle::cmi(sys, {3}, {0}, {2}), 1e-12);
  EXPECT_NEAR(n.pair_residual[0][1], oracle::cmi(sys, {0}, {2}) + oracle::cmi(sys, {1}, {3}, {0, 2}), 1e-12);
  EXPECT_NEAR(n.joint_entropy, oracle::H(sys, {0, 1, 2, 3}), 1e-12);
}

TEST(NetworkTheorems, BivariateHardReportsHold) {
  const SystemLayout l(2, 3);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rs = verify_network_theorems(random_system(l, seed, 2, seed % 4 == 0 ? 0.5 : 0.0), l);
    for (const auto& r : rs) {
      if (r.hard) EXPECT_TRUE(r.passed) << r.identity << " seed " << seed << " gap " << r.gap;
    }
    EXPECT_TRUE(find(rs, "bivariate_closure").passed);
    EXPECT_TRUE(find(rs, "marko_inequality").passed);
    EXPECT_TRUE(find(rs, "total_correlation_pairwise_flows").hard);
  }
}

TEST(NetworkTheorems, TrivariateOutgoingBoundAndFlowClosure) {
  const SystemLayout l(3, 2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto rs = verify_network_theorems(random_system(l, seed), l);
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_TRUE(find(rs, "outgoing_flow_bound_" + std::to_string(i)).passed) << seed;
    }
    EXPECT_TRUE(find(rs, "total_correlation_flow_closure").passed) << seed;
  }
}

TEST(NetworkTheorems, IncomingBoundFailsForSomeTrivariateSystems) {
  const SystemLayout l(3, 2);
  std::size_t violations = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto rs = verify_network_theorems(random_system(l, seed), l);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& r = find(rs, "incoming_flow_bound_" + std::to_string(i));
      EXPECT_FALSE(r.hard);
      if (!r.passed) ++violations;
    }
  }
  EXPECT_GT(violations, 0u);
}

TEST(NetworkTheorems, IndependentVariablesCloseEveryHardReport) {
  const SystemLayout l(3, 2);
  std::vector<double> mass(64);
  for (std::size_t c = 0; c < 64; ++c) {
    double p = 1.0;
    for (std::size_t a = 0; a < 6; ++a) p *= (c >> a & 1) ? 0.3 : 0.7;
    mass[c] = p;
  }
  const auto rs = verify_network_theorems(make_system(l, mass), l);
  for (const auto& r : rs) {
    if (!r.hard && r.identity.find("residual") != std::string::npos) continue;
    EXPECT_TRUE(r.passed) << r.identity;
    EXPECT_NEAR(r.gap, 0.0, 1e-12) << r.identity;
  }
  // The single residual keeps each variable's whole entropy here, so the
  // residual forms of the balances stay open by exactly that amount.
  const CumulativeNetwork n = cumulative_network(make_system(l, mass), l);
  EXPECT_NEAR(find(rs, "incoming_flow_balance_with_residual_0").gap, -n.entropy_rate[0], 1e-12);
}

TEST(NetworkTheorems, SoftReportsAreFlagged) {
  const SystemLayout l(3, 2);
  const auto rs = verify_network_theorems(random_system(l, 3), l);
  EXPECT_FALSE(find(rs, "total_correlation_flows_and_residuals").hard);
  EXPECT_FALSE(find(rs, "incoming_flow_balance_with_residual_0").hard);
  EXPECT_FALSE(find(rs, "total_correlation_pairwise_flows").hard);
  EXPECT_TRUE(find(rs, "outgoing_flow_bound_2").hard);
}

TEST(NetworkTheorems, TooLargeRejected) {
  const SystemLayout l(7, 3);
  testutil::expect_errc(Errc::kSystemTooLarge, [&] { verify_network_theorems(random_system(l, 1), l); });
}
