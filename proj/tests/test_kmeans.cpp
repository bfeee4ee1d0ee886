#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hermclust/kmeans.hpp"
#include "hermclust/rng.hpp"

namespace hermclust {
namespace {

using Eigen::MatrixXd;

MatrixXd blobs(int per_blob, std::uint64_t seed, double spread) {
  const double centers[3][2] = {{0, 0}, {10, 0}, {0, 10}};
  RngStream rng = CounterRng(seed).stream(0);
  MatrixXd x(3 * per_blob, 2);
  for (int b = 0; b < 3; ++b) {
    for (int i = 0; i < per_blob; ++i) {
      x(b * per_blob + i, 0) = centers[b][0] + spread * (rng.next_uniform() - 0.5);
      x(b * per_blob + i, 1) = centers[b][1] + spread * (rng.next_uniform() - 0.5);
    }
  }
  return x;
}

bool same_up_to_relabel(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return true;
}

TEST(Kmeans, SeparatedBlobs) {
  const MatrixXd x = blobs(20, 3, 1.0);
  const KmeansResult r = kmeans(x, 3);
  std::vector<int> truth;
  for (int b = 0; b < 3; ++b) truth.insert(truth.end(), 20, b);
  EXPECT_TRUE(same_up_to_relabel(r.labels, truth));
  EXPECT_EQ(r.centroids.rows(), 3);
  EXPECT_NEAR(r.cost, kmeans_cost(x, r.labels, r.centroids), 1e-9);
}

TEST(Kmeans, ThreeDistinctPointsHaveZeroCost) {
  MatrixXd x(6, 1);
  x << 1, 1, 5, 5, 9, 9;
  const KmeansResult r = kmeans(x, 3);
  EXPECT_EQ(r.cost, 0.0);
  EXPECT_TRUE(same_up_to_relabel(r.labels, {0, 0, 1, 1, 2, 2}));
}

TEST(Kmeans, IdenticalPointsStillFillEveryCluster) {
  const MatrixXd x = MatrixXd::Zero(5, 2);
  const KmeansResult r = kmeans(x, 3);
  std::vector<int> sizes(3, 0);
  for (int l : r.labels) ++sizes[l];
  for (int s : sizes) EXPECT_GE(s, 1);
  EXPECT_EQ(r.cost, 0.0);
}

TEST(Kmeans, RejectsBadInput) {
  EXPECT_THROW(kmeans(MatrixXd::Zero(2, 1), 3), std::invalid_argument);
  EXPECT_THROW(kmeans(MatrixXd::Zero(2, 1), 0), std::invalid_argument);
  MatrixXd bad = MatrixXd::Zero(3, 1);
  bad(1, 0) = std::nan("");
  EXPECT_THROW(kmeans(bad, 2), std::invalid_argument);
  EXPECT_THROW(kmeans(MatrixXd::Zero(3, 1), 2, {.restarts = 0}), std::invalid_argument);
}

TEST(Kmeans, CostHistoryIsNonIncreasing) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const MatrixXd x = blobs(15, seed, 14.0);
    const KmeansResult r = kmeans(x, 4, {.restarts = 2, .tol = 0.0, .seed = seed});
    ASSERT_FALSE(r.cost_history.empty());
    for (std::size_t i = 1; i < r.cost_history.size(); ++i) {
      EXPECT_LE(r.cost_history[i], r.cost_history[i - 1] * (1 + 1e-12)) << "seed " << seed;
    }
    EXPECT_LE(r.cost, r.cost_history.back() * (1 + 1e-12));
  }
}

TEST(Kmeans, SeededDeterminism) {
  const MatrixXd x = blobs(25, 9, 12.0);
  const KmeansResult a = kmeans(x, 3, {.seed = 42});
  const KmeansResult b = kmeans(x, 3, {.seed = 42});
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.cost, b.cost);
  EXPECT_EQ(a.restart, b.restart);
}

TEST(Kmeans, MoreRestartsNeverRaiseCost) {
  // Restart r uses stream r, so a run with R + 1 restarts contains the R-run.
  const MatrixXd x = blobs(20, 5, 16.0);
  double previous = std::numeric_limits<double>::infinity();
  for (int restarts = 1; restarts <= 8; ++restarts) {
    const KmeansResult r = kmeans(x, 5, {.restarts = restarts, .seed = 11});
    EXPECT_LE(r.cost, previous);
    EXPECT_LT(r.restart, restarts);
    previous = r.cost;
  }
}

TEST(KmeansCost, MatchesNaiveSum) {
  MatrixXd x(4, 2);
  x << 0, 0, 2, 0, 0, 2, 2, 2;
  MatrixXd c(2, 2);
  c << 1, 0, 1, 2;
  EXPECT_DOUBLE_EQ(kmeans_cost(x, {0, 0, 1, 1}, c), 4.0);
  EXPECT_THROW(kmeans_cost(x, {0, 0, 1}, c), std::invalid_argument);
  EXPECT_THROW(kmeans_cost(x, {0, 0, 1, 2}, c), std::invalid_argument);
}

TEST(KmeansPlusPlus, SecondPickFollowsSquaredDistance) {
  // Points 0, 1 and 3 on a line. With the first centre at 0 the second is 1
  // or 3 with odds 1 : 9.
  MatrixXd x(3, 1);
  x << 0, 1, 3;
  int first_zero = 0;
  int picked_far = 0;
  const int draws = 10000;
  for (int t = 0; t < draws; ++t) {
    RngStream rng = CounterRng(static_cast<std::uint64_t>(t)).stream(0);
    const auto idx = kmeanspp_seed(x, 2, rng);
    ASSERT_EQ(idx.size(), 2u);
    ASSERT_NE(idx[0], idx[1]);
    if (idx[0] != 0) continue;
    ++first_zero;
    if (idx[1] == 2) ++picked_far;
  }
  // Expect ~3333 draws with first = 0; far share 0.9 with sd ~0.005.
  ASSERT_GT(first_zero, 3000);
  const double share = static_cast<double>(picked_far) / first_zero;
  EXPECT_NEAR(share, 0.9, 0.02);
}

TEST(KmeansPlusPlus, DistinctPicksWhenPossible) {
  MatrixXd x(4, 1);
  x << 0, 0, 0, 5;
  RngStream rng = CounterRng(1).stream(0);
  const auto idx = kmeanspp_seed(x, 2, rng);
  EXPECT_TRUE((idx[0] == 3) != (idx[1] == 3));
}

}  // namespace
}  // namespace hermclust
