#include <gtest/gtest.h>

#include "infoflow/error.hpp"
#include "infoflow/joint_table.hpp"
#include "infoflow/lattice.hpp"
#include "test_util.hpp"

using namespace infoflow;
using testutil::expect_errc;

namespace {

std::vector<AxisLabel> labels(std::size_t n) {
  std::vector<AxisLabel> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({static_cast<int>(i), 0});
  return out;
}


}  // namespace

TEST(Normalize, ProportionalCounts) {
  const JointTable t = normalize({{{0}, 3.0}, {{1}, 1.0}}, labels(1), {2});
  EXPECT_DOUBLE_EQ(t.mass(std::vector<std::size_t>{0}), 0.75);
  EXPECT_DOUBLE_EQ(t.mass(std::vector<std::size_t>{1}), 0.25);
}

TEST(Normalize, SingleOutcome) {
  const JointTable t = normalize({{{0}, 5.0}}, labels(1), {2});
  EXPECT_DOUBLE_EQ(t.mass(std::vector<std::size_t>{0}), 1.0);
  EXPECT_DOUBLE_EQ(t.mass(std::vector<std::size_t>{1}), 0.0);
}

TEST(Normalize, EmptyCountsRejected) {
  expect_errc(Errc::kZeroTotalCount, [] { normalize({}, labels(1), {2}); });
}

TEST(Normalize, TupleOutsideArityRejected) {
  expect_errc(Errc::kTupleOutOfRange, [] { normalize({{{2}, 1.0}}, labels(1), {2}); });
}

TEST(Normalize, NegativeCountRejected) {
  expect_errc(Errc::kInvalidArgument, [] { normalize({{{0}, -1.0}, {{1}, 2.0}}, labels(1), {2}); });
}

TEST(JointTable, MassMustSumToOne) {
  EXPECT_THROW(JointTable(labels(1), {2}, std::vector<double>{0.5, 0.4}), Error);
  EXPECT_THROW(JointTable(labels(2), {2}, std::vector<double>{0.5, 0.5}), Error);
}

TEST(JointTable, EncodeDecodeRoundTrip) {
  const JointTable t = normalize({{{1, 2, 0}, 1.0}}, labels(3), {2, 3, 4});
  EXPECT_EQ(t.cell_count(), 24u);
  for (std::uint64_t c = 0; c < t.cell_count(); ++c) EXPECT_EQ(t.encode(t.decode(c)), c);
  EXPECT_EQ(t.encode(std::vector<std::size_t>{1, 2, 0}), 1u * 12 + 2u * 4 + 0u);
}

TEST(JointTable, AxisLookup) {
  const JointTable t = normalize({{{0, 0}, 1.0}}, {{0, -1}, {0, 0}}, {2, 2});
  EXPECT_EQ(t.axis_position({0, 0}), 1u);
  EXPECT_FALSE(t.find_axis({1, 0}).has_value());
  expect_errc(Errc::kIndexOutOfRange, [&] { (void)t.axis_position({3, 0}); });
}

TEST(Marginalize, UniformSquare) {
  const JointTable t = normalize({{{0, 0}, 1}, {{0, 1}, 1}, {{1, 0}, 1}, {{1, 1}, 1}}, labels(2), {2, 2});
  const JointTable m = marginalize(t, {0});
  ASSERT_EQ(m.rank(), 1u);
  EXPECT_DOUBLE_EQ(m.mass(std::vector<std::size_t>{0}), 0.5);
  EXPECT_DOUBLE_EQ(m.mass(std::vector<std::size_t>{1}), 0.5);
}

TEST(Marginalize, CopyDistribution) {
  const JointTable t = normalize({{{0, 0}, 1}, {{1, 1}, 1}}, labels(2), {2, 2});
  const JointTable m = marginalize(t, {1});
  EXPECT_DOUBLE_EQ(m.mass(std::vector<std::size_t>{0}), 0.5);
  EXPECT_EQ(m.axes()[0], (AxisLabel{1, 0}));
}

TEST(Marginalize, KeepAllIsIdentity) {
  const JointTable t = random_system(SystemLayout(2, 2), 7);
  const JointTable m = marginalize(t, t.all_axes());
  ASSERT_EQ(m.cell_count(), t.cell_count());
  for (std::uint64_t c = 0; c < t.cell_count(); ++c) EXPECT_DOUBLE_EQ(m.mass_at(c), t.mass_at(c));
}

TEST(Marginalize, MatchesBruteForceSums) {
  const JointTable t = random_system(SystemLayout(3, 1), 11, 3);
  const JointTable m = marginalize(t, {0, 2});
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t c = 0; c < 3; ++c) {
      double sum = 0.0;
      for (std::size_t b = 0; b < 3; ++b) sum += t.mass(std::vector<std::size_t>{a, b, c});
      EXPECT_NEAR(m.mass(std::vector<std::size_t>{a, c}), sum, 1e-15);
    }
  }
}

TEST(Marginalize, EmptyKeepRejected) {
  const JointTable t = random_system(SystemLayout(2, 1), 1);
  expect_errc(Errc::kEmptyAxisSet, [&] { marginalize(t, AxisSet{}); });
  expect_errc(Errc::kIndexOutOfRange, [&] { marginalize(t, {5}); });
}

TEST(JointTable, SparseAndDenseAgree) {
  const JointTable dense = random_system(SystemLayout(2, 2), 3, 2, 0.3);
  JointTable::SparseMass sparse;
  dense.for_each_nonzero([&](JointTable::Code c, double p) { sparse[c] = p; });
  const std::vector<AxisLabel> axes(dense.axes().begin(), dense.axes().end());
  const std::vector<std::size_t> arities(dense.arities().begin(), dense.arities().end());
  const JointTable s(axes, arities, sparse);
  EXPECT_FALSE(s.is_dense());
  for (const AxisSet keep : {AxisSet{0}, AxisSet{1, 3}, AxisSet{0, 1, 2}}) {
    const JointTable md = marginalize(dense, keep);
    const JointTable ms = marginalize(s, keep);
    for (std::uint64_t c = 0; c < md.cell_count(); ++c) EXPECT_NEAR(md.mass_at(c), ms.mass_at(c), 1e-15);
  }
}

TEST(AxisSet, SortsAndDeduplicates) {
  const AxisSet a{3, 1, 3};
  EXPECT_EQ(std::vector<std::size_t>(a.begin(), a.end()), (std::vector<std::size_t>{1, 3}));
  EXPECT_TRUE((a | AxisSet{2}).contains(2));
  EXPECT_TRUE(a.intersects(AxisSet{3, 4}));
  EXPECT_FALSE(a.intersects(AxisSet{0}));
}

TEST(ProductOfArities, OverflowDetected) {
  const std::vector<std::size_t> big(70, 2);
  EXPECT_THROW(product_of_arities(big), Error);
}
