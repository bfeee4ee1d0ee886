#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "hermclust/graph.hpp"
#include "test_support.hpp"

namespace hermclust {
namespace {

using testing::dense_adjacency;
using testing::random_digraph;

TEST(Digraph, CanonicalizesRecords) {
  const std::vector<Edge> raw = {{1, 0, 2.0}, {0, 1, 1.0}, {0, 1, 0.5}, {2, 2, 9.0}, {0, 2, 1.0}};
  IngestStats stats;
  const Digraph g = Digraph::from_edges(3, raw, &stats);
  EXPECT_EQ(stats.records, 5u);
  EXPECT_EQ(stats.self_loops_dropped, 1u);
  EXPECT_EQ(stats.duplicates_merged, 1u);
  ASSERT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.5}));
  EXPECT_EQ(g.edges()[1], (Edge{0, 2, 1.0}));
  EXPECT_EQ(g.edges()[2], (Edge{1, 0, 2.0}));
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 1.5);
  EXPECT_DOUBLE_EQ(g.weight(2, 0), 0.0);
  EXPECT_DOUBLE_EQ(g.total_weight(), 4.5);
}

TEST(Digraph, RejectsBadRecords) {
  const std::vector<Edge> out_of_range = {{0, 3, 1.0}};
  EXPECT_THROW(Digraph::from_edges(3, out_of_range), std::invalid_argument);
  const std::vector<Edge> negative = {{0, 1, -1.0}};
  EXPECT_THROW(Digraph::from_edges(3, negative), std::invalid_argument);
  const std::vector<Edge> nan = {{0, 1, std::numeric_limits<double>::quiet_NaN()}};
  EXPECT_THROW(Digraph::from_edges(3, nan), std::invalid_argument);
}

TEST(Digraph, DegreesReverseAndScale) {
  const Digraph g = random_digraph(12, 0.3, 5, true);
  const auto out = g.out_weights();
  const auto in = g.in_weights();
  const Eigen::MatrixXd m = dense_adjacency(g);
  for (int u = 0; u < 12; ++u) {
    EXPECT_NEAR(out[u], m.row(u).sum(), 1e-12);
    EXPECT_NEAR(in[u], m.col(u).sum(), 1e-12);
  }
  EXPECT_TRUE(dense_adjacency(g.reversed()).isApprox(m.transpose()));
  EXPECT_TRUE(dense_adjacency(g.scaled(2.5)).isApprox(2.5 * m));
  EXPECT_THROW(g.scaled(0.0), std::invalid_argument);
}

TEST(EdgeList, ParsesCommentsAndDefaultWeights) {
  std::istringstream in("# header\n0 1\n1 2 2.5\n\n2 0 # trailing\n");
  const Digraph g = read_edge_list(in);
  EXPECT_EQ(g.num_vertices(), 3);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(g.weight(1, 2), 2.5);
  EXPECT_DOUBLE_EQ(g.weight(2, 0), 1.0);
}

TEST(EdgeList, RoundTrips) {
  const Digraph g = random_digraph(15, 0.2, 8, true);
  std::ostringstream out;
  const std::vector<std::string> header = {"seed 8"};
  write_edge_list(out, g, header);
  std::istringstream in(out.str());
  const Digraph h = read_edge_list(in);
  EXPECT_EQ(h.num_vertices(), g.num_vertices());
  EXPECT_EQ(h.edges(), g.edges());
}

TEST(EdgeList, RejectsMalformedLines) {
  std::istringstream bad("0 x\n");
  EXPECT_THROW(read_edge_list(bad), std::invalid_argument);
  std::istringstream negative("-1 2\n");
  EXPECT_THROW(read_edge_list(negative), std::invalid_argument);
}

TEST(DenseCsv, ReadsSquareAndRejectsRagged) {
  std::istringstream in("0,3\n1,0\n");
  const Eigen::MatrixXd m = read_dense_csv(in);
  EXPECT_EQ(m.rows(), 2);
  EXPECT_DOUBLE_EQ(m(0, 1), 3.0);
  std::istringstream ragged("0,1,2\n1,0\n");
  EXPECT_THROW(read_dense_csv(ragged), std::invalid_argument);
  std::istringstream rect("0,1\n1,0\n2,2\n");
  EXPECT_THROW(read_dense_csv(rect), std::invalid_argument);
}

TEST(SymmetrizeNaive, Examples) {
  const std::vector<Edge> e = {{0, 1, 5.0}, {1, 0, 2.0}};
  const Eigen::MatrixXd s(symmetrize_naive(Digraph::from_edges(2, e)));
  EXPECT_DOUBLE_EQ(s(0, 1), 7.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 7.0);
  EXPECT_EQ(Eigen::MatrixXd(symmetrize_naive(Digraph(3))).cwiseAbs().sum(), 0.0);
}

TEST(CoclusterProducts, SmallExamples) {
  const std::vector<Edge> parents = {{0, 1}, {0, 2}};
  EXPECT_DOUBLE_EQ(cocluster_products(Digraph::from_edges(3, parents)).left.coeff(1, 2), 1.0);
  const std::vector<Edge> children = {{1, 0}, {2, 0}};
  EXPECT_DOUBLE_EQ(cocluster_products(Digraph::from_edges(3, children)).right.coeff(1, 2), 1.0);
  const std::vector<Edge> cycle = {{0, 1}, {1, 2}, {2, 0}};
  const Eigen::MatrixXd sum(cocluster_products(Digraph::from_edges(3, cycle)).sum);
  for (int j = 0; j < 3; ++j) EXPECT_DOUBLE_EQ(sum(j, j), 2.0);
}

// Triple-loop oracle over the definitions (common parents / common children).
TEST(CoclusterProducts, MatchTripleLoopOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 14);
    const Digraph g = random_digraph(n, 0.35, seed, seed % 2 == 1);
    const auto prod = cocluster_products(g);
    const Eigen::MatrixXd left(prod.left);
    const Eigen::MatrixXd right(prod.right);
    const Eigen::MatrixXd sum(prod.sum);
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        double parents = 0.0;
        double children = 0.0;
        for (int w = 0; w < n; ++w) {
          parents += g.weight(w, u) * g.weight(w, v);
          children += g.weight(u, w) * g.weight(v, w);
        }
        EXPECT_NEAR(left(u, v), parents, 1e-12);
        EXPECT_NEAR(right(u, v), children, 1e-12);
        EXPECT_NEAR(sum(u, v), parents + children, 1e-12);
      }
    }
  }
}

TEST(NetFlow, Examples) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 3, 1, 0;
  Digraph g = net_flow_transform(m);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 0.75);
  EXPECT_DOUBLE_EQ(g.weight(1, 0), 0.25);
  m << 0, 2, 2, 0;
  g = net_flow_transform(m);
  EXPECT_DOUBLE_EQ(g.weight(0, 1) - g.weight(1, 0), 0.0);
  m << 0, 4, 0, 0;
  g = net_flow_transform(m);
  EXPECT_DOUBLE_EQ(g.weight(0, 1), 1.0);
  EXPECT_EQ(g.num_edges(), 1u);
  m << 0, 0, 0, 0;
  EXPECT_EQ(net_flow_transform(m).num_edges(), 0u);
}

TEST(NetFlow, RejectsBadInput) {
  EXPECT_THROW(net_flow_transform(Eigen::MatrixXd::Ones(2, 3)), std::invalid_argument);
  Eigen::MatrixXd neg(2, 2);
  neg << 0, -1, 1, 0;
  EXPECT_THROW(net_flow_transform(neg), std::invalid_argument);
}

TEST(CapEntries, Examples) {
  Eigen::MatrixXd m(1, 2);
  m << 25000, 5;
  const Eigen::MatrixXd c = cap_entries(m, 10000);
  EXPECT_DOUBLE_EQ(c(0, 0), 10000);
  EXPECT_DOUBLE_EQ(c(0, 1), 5);
  EXPECT_EQ(cap_entries(m, std::numeric_limits<double>::infinity()), m);
}

}  // namespace
}  // namespace hermclust
