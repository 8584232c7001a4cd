#include <gtest/gtest.h>

#include "infoflow/flow_network.hpp"
#include "infoflow/process_model.hpp"
#include "infoflow/rng.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace infoflow;
using testutil::expect_errc;

namespace {

using W = std::span<const std::size_t>;

ProcessModel binary_model(std::size_t n, std::size_t k, const std::function<double(W)>& w) {
  return ProcessModel::from_weights(n, k, 1, std::vector<std::size_t>(n, 2), w);
}

// N=2, K=1, axes (X0, Y0, X-1, Y-1): X i.i.d. fair, Y0 = X-1.
ProcessModel copy_process() {
  return binary_model(2, 1, [](W t) { return t[1] == t[2] ? 1.0 : 0.0; });
}

ProcessModel independent(std::size_t n) {
  return binary_model(n, 1, [n](W t) {
    double w = 1.0;
    for (std::size_t v = 0; v < n; ++v) w *= t[v] ? 0.3 + 0.1 * v : 0.7 - 0.1 * v;
    return w;
  });
}

ProcessModel random_model(std::size_t n, std::size_t k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(std::size_t{1} << (n * (k + 1)));
  for (double& x : w) x = rng.exponential();
  return binary_model(n, k, [&](W t) {
    std::size_t c = 0;
    for (std::size_t s : t) c = 2 * c + s;
    return w[c];
  });
}

std::vector<std::size_t> v(const AxisSet& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST(ProcessModel, AxisLayoutIsOffsetMajor) {
  const auto labels = ProcessModel::window_labels(2, 2, 3);
  ASSERT_EQ(labels.size(), 6u);
  EXPECT_EQ(labels[1], (AxisLabel{1, 0}));
  EXPECT_EQ(labels[2], (AxisLabel{0, -3}));
  EXPECT_EQ(labels[5], (AxisLabel{1, -6}));
  const ProcessModel m = copy_process();
  EXPECT_EQ(m.position(1, 1), 3u);
  EXPECT_EQ(m.pasts_except({0}), (AxisSet{3}));
}

TEST(ProcessModel, RejectsZeroParameters) {
  expect_errc(Errc::kInvalidArgument, [] { binary_model(2, 0, [](W) { return 1.0; }); });
  expect_errc(Errc::kInvalidArgument,
              [] { ProcessModel::from_weights(1, 1, 0, {2}, [](W) { return 1.0; }); });
}

TEST(EntropyRate, Examples) {
  EXPECT_NEAR(entropy_rate(copy_process(), 0), 1.0, 1e-14);
  const ProcessModel constant = binary_model(1, 1, [](W t) { return t[0] == 0 && t[1] == 0; });
  EXPECT_NEAR(entropy_rate(constant, 0), 0.0, 1e-14);
  const ProcessModel self_copy = binary_model(1, 1, [](W t) { return t[0] == t[1]; });
  EXPECT_NEAR(entropy_rate(self_copy, 0), 0.0, 1e-14);
}

TEST(FreeEntropy, Examples) {
  EXPECT_NEAR(free_entropy(copy_process(), 1), 0.0, 1e-14);
  const ProcessModel ind = independent(3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(free_entropy(ind, i), entropy_rate(ind, i), 1e-14);
  // Y0 = X-1 xor fair noise
  const ProcessModel noisy = binary_model(2, 1, [](W) { return 1.0; });
  EXPECT_NEAR(free_entropy(noisy, 1), 1.0, 1e-14);
}

TEST(TransferEntropy, CopyProcess) {
  const ProcessModel m = copy_process();
  for (auto mode : {Conditioning::kPairwise, Conditioning::kMultivariate}) {
    EXPECT_NEAR(transfer_entropy(m, 0, 1, mode), 1.0, 1e-14);
    EXPECT_NEAR(transfer_entropy(m, 1, 0, mode), 0.0, 1e-14);
  }
  expect_errc(Errc::kSelfPair, [&] { transfer_entropy(m, 1, 1, Conditioning::kPairwise); });
}

TEST(TransferEntropy, IndependentVariables) {
  const ProcessModel m = independent(3);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (i == j) continue;
      EXPECT_NEAR(transfer_entropy(m, j, i, Conditioning::kPairwise), 0.0, 1e-14);
      EXPECT_NEAR(transfer_entropy(m, j, i, Conditioning::kMultivariate), 0.0, 1e-14);
    }
  }
}

TEST(TransferEntropy, ChainConfound) {
  // X i.i.d., Y copies X one step later, Z copies Y one step later. K = 2,
  // axes k*3 + v.
  const ProcessModel m = binary_model(3, 2, [](W t) {
    return t[1] == t[3] && t[4] == t[6] && t[2] == t[6] && t[5] == t[7] ? 1.0 : 0.0;
  });
  EXPECT_NEAR(transfer_entropy(m, 0, 2, Conditioning::kMultivariate), 0.0, 1e-14);
  EXPECT_NEAR(transfer_entropy(m, 0, 2, Conditioning::kPairwise), 1.0, 1e-14);
  // X's own past already carries what Y passes on.
  EXPECT_NEAR(transfer_entropy(m, 1, 2, Conditioning::kMultivariate), 0.0, 1e-14);
  EXPECT_NEAR(transfer_entropy(m, 1, 2, Conditioning::kPairwise), 1.0, 1e-14);
  EXPECT_NEAR(transfer_entropy(m, 0, 1, Conditioning::kMultivariate), 1.0, 1e-14);
}

TEST(TransferEntropy, MatchesOracleOnRandomModels) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ProcessModel m = random_model(3, 1, seed);
    const JointTable& t = m.window_table();
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < 3; ++i) {
        if (i == j) continue;
        const double pte = oracle::cmi(t, v(m.present(i)), v(m.past(j)), v(m.past(i)));
        const double mte = oracle::cmi(t, v(m.present(i)), v(m.past(j)), v(m.pasts_except({j})));
        EXPECT_NEAR(transfer_entropy(m, j, i, Conditioning::kPairwise), pte, 1e-12);
        EXPECT_NEAR(transfer_entropy(m, j, i, Conditioning::kMultivariate), mte, 1e-12);
        EXPECT_NEAR(residual_pair(m, i, j),
                    oracle::cmi(t, v(m.present(i)), v(m.present(j)), v(m.all_pasts())), 1e-12);
        EXPECT_NEAR(residual_pair(m, i, j), residual_pair(m, j, i), 1e-14);
      }
      double sum = 0.0;
      for (std::size_t s = 0; s < 3; ++s) {
        if (s != j) sum += transfer_entropy(m, s, j, Conditioning::kMultivariate);
      }
      EXPECT_NEAR(residual_single(m, j), oracle::cond_H(t, v(m.present(j)), v(m.pasts_except({j}))) - sum, 1e-12);
    }
    EXPECT_NEAR(residual_global(m), oracle::coinfo(t, {{0}, {1}, {2}}, v(m.all_pasts())), 1e-12);
  }
}

TEST(ResidualPair, Examples) {
  // X0 = Y0 = fresh coin each step.
  const ProcessModel sync = binary_model(2, 1, [](W t) { return t[0] == t[1] && t[2] == t[3]; });
  EXPECT_NEAR(residual_pair(sync, 0, 1), 1.0, 1e-14);
  EXPECT_NEAR(residual_pair(independent(2), 0, 1), 0.0, 1e-14);
  EXPECT_NEAR(residual_pair(copy_process(), 0, 1), 0.0, 1e-14);
  expect_errc(Errc::kSelfPair, [] { residual_pair(copy_process(), 0, 0); });
}

TEST(ResidualSingle, Examples) {
  const ProcessModel m = copy_process();
  // N = 2: H(Y0 | X past) - T_{X->Y}
  EXPECT_NEAR(residual_single(m, 1), 0.0 - 1.0, 1e-14);
  const ProcessModel ind = independent(2);
  EXPECT_NEAR(residual_single(ind, 0), entropy_rate(ind, 0), 1e-14);
  const ProcessModel det = binary_model(2, 1, [](W t) { return t[0] == t[3] && t[1] == t[2]; });
  EXPECT_NEAR(free_entropy(det, 0), 0.0, 1e-14);
  EXPECT_NEAR(residual_single(det, 0) + transfer_entropy(det, 1, 0, Conditioning::kMultivariate),
              oracle::cond_H(det.window_table(), {0}, {3}), 1e-14);
  const ProcessModel frozen = binary_model(2, 1, [](W t) { return t[0] + t[1] + t[2] + t[3] == 0; });
  EXPECT_NEAR(residual_single(frozen, 0), 0.0, 1e-14);
}

TEST(ResidualGlobal, Examples) {
  EXPECT_EQ(residual_global(copy_process()), 0.0);
  const ProcessModel xor3 = binary_model(3, 1, [](W t) { return (t[0] ^ t[1]) == t[2] ? 1.0 : 0.0; });
  EXPECT_NEAR(residual_global(xor3), -1.0, 1e-14);
  EXPECT_NEAR(residual_global(independent(3)), 0.0, 1e-14);
}

TEST(BuildNetwork, CopyProcess) {
  const InfoNetwork n = build_network(copy_process(), Conditioning::kMultivariate);
  EXPECT_EQ(n.n_vars, 2u);
  EXPECT_NEAR(n.transfer[0][1], 1.0, 1e-14);
  EXPECT_NEAR(n.transfer[1][0], 0.0, 1e-14);
  EXPECT_NEAR(n.entropy_rate[1], 1.0, 1e-14);
  EXPECT_NEAR(n.free_entropy[1], 0.0, 1e-14);
  EXPECT_NEAR(n.pair_residual[0][1], 0.0, 1e-14);
  EXPECT_NEAR(n.total_correlation, 1.0, 1e-14);
  const nlohmann::json j = n;
  EXPECT_EQ(j["mode"], "MULTIVARIATE");
  EXPECT_EQ(j["units"], "bits/step");
}

TEST(BuildNetwork, IndependentTrivariate) {
  const InfoNetwork n = build_network(independent(3), Conditioning::kPairwise);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(n.entropy_rate[i], n.free_entropy[i], 1e-14);
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      EXPECT_NEAR(n.transfer[i][j], 0.0, 1e-14);
      EXPECT_NEAR(n.pair_residual[i][j], 0.0, 1e-14);
    }
  }
  EXPECT_NEAR(n.total_correlation, 0.0, 1e-12);
}

TEST(BuildNetwork, InvariantsOnRandomModels) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ProcessModel m = random_model(3, 1, 100 + seed);
    for (auto mode : {Conditioning::kPairwise, Conditioning::kMultivariate}) {
      const InfoNetwork n = build_network(m, mode);
      for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_GE(n.entropy_rate[i] + 1e-10, n.free_entropy[i]);
        EXPECT_GE(n.free_entropy[i], -1e-10);
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) continue;
          EXPECT_GE(n.transfer[j][i], -1e-12);
          EXPECT_GE(n.pair_residual[i][j], -1e-12);
          EXPECT_NEAR(n.transfer[j][i], transfer_entropy(m, j, i, mode), 1e-12);
        }
      }
      EXPECT_NEAR(n.total_correlation, total_correlation_rate(m), 1e-12);
    }
  }
}

TEST(Conditioning, Parsing) {
  EXPECT_EQ(parse_conditioning("mte"), Conditioning::kMultivariate);
  EXPECT_EQ(parse_conditioning("PAIRWISE"), Conditioning::kPairwise);
  EXPECT_EQ(to_string(Conditioning::kPairwise), "PAIRWISE");
  EXPECT_THROW(parse_conditioning("granger"), Error);
}
