#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hermclust/spectral.hpp"
#include "test_support.hpp"

namespace hermclust {
namespace {

using cd = std::complex<double>;

Eigen::MatrixXcd two_cycle() {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 1) = cd(0, 1);
  a(1, 0) = cd(0, -1);
  return a;
}

// Expected adjacency of a 3-cluster cyclic model with p = 1, eta = 0 and
// `n` vertices per cluster.
Eigen::MatrixXcd cyclic3_expected(int n) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(3 * n, 3 * n);
  for (int c = 0; c < 3; ++c) {
    const int d = (c + 1) % 3;
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        a(c * n + u, d * n + v) = cd(0, 1);
        a(d * n + v, c * n + u) = cd(0, -1);
      }
    }
  }
  return a;
}

std::vector<double> values_of(const std::vector<EigenPair>& pairs) {
  std::vector<double> v;
  for (const auto& p : pairs) v.push_back(p.value);
  return v;
}

Eigen::MatrixXcd projection_oracle(std::span<const EigenPair> pairs, Eigen::Index n) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& e : pairs) p += e.vector * e.vector.adjoint();
  return p;
}

std::vector<EigenPair> fake_pairs(std::initializer_list<double> values) {
  std::vector<EigenPair> out;
  for (double v : values) out.push_back({v, Eigen::VectorXcd::Zero(6)});
  return out;
}

TEST(EigHermitian, Examples) {
  auto pairs = eig_hermitian(two_cycle());
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_NEAR(pairs[0].value, 1.0, 1e-12);
  EXPECT_NEAR(pairs[1].value, -1.0, 1e-12);

  pairs = eig_hermitian(Eigen::MatrixXcd::Zero(4, 4));
  ASSERT_EQ(pairs.size(), 4u);
  for (const auto& p : pairs) EXPECT_EQ(p.value, 0.0);

  pairs = eig_hermitian(cyclic3_expected(1));
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_NEAR(pairs[0].value, std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(pairs[1].value, -std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(pairs[2].value, 0.0, 1e-12);
}

TEST(EigHermitian, RejectsNonHermitian) {
  Eigen::MatrixXcd a = two_cycle();
  a(1, 0) = cd(0, 1);
  EXPECT_THROW(eig_hermitian(a), std::invalid_argument);
}

// Residual and unit norm on random Hermitian matrices, eigenvalues checked
// against a complex eigensolver.
TEST(EigHermitian, RandomResidualsAndOracleSpectrum) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 50);
    const bool imaginary = seed % 2 == 0;
    const Eigen::MatrixXcd a = testing::random_hermitian(n, seed, imaginary);
    const auto pairs = eig_hermitian(a);
    ASSERT_EQ(static_cast<Eigen::Index>(pairs.size()), n);
    const double norm = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a).eigenvalues().cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      EXPECT_NEAR(pairs[i].vector.norm(), 1.0, 1e-10);
      EXPECT_LE((a * pairs[i].vector - pairs[i].value * pairs[i].vector).norm(), 1e-8 * std::max(norm, 1.0));
      if (i > 0) EXPECT_GE(std::abs(pairs[i - 1].value), std::abs(pairs[i].value) - 1e-12);
    }
    std::vector<double> got = values_of(pairs);
    std::sort(got.begin(), got.end());
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a).eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) EXPECT_NEAR(got[i], ref[i], 1e-8);
  }
}

TEST(EigHermitian, PurelyImaginarySpectrumIsSymmetric) {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 30);
    auto v = values_of(eig_hermitian(testing::random_hermitian(n, seed, true)));
    std::vector<double> neg(v.size());
    std::transform(v.begin(), v.end(), neg.begin(), [](double x) { return -x; });
    std::sort(v.begin(), v.end());
    std::sort(neg.begin(), neg.end());
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], neg[i], 1e-8);
  }
}

// Top-m requests (which use the positive half and conjugation) reproduce
// the leading part of the full decomposition.
TEST(EigHermitian, TopRequestMatchesFullSpectrum) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Digraph g = testing::random_digraph(60, 0.1, seed, seed % 2 == 1);
    const HermitianOperator a = build_hermitian(g);
    const auto full = eig_hermitian(a);
    EigRequest req;
    req.count = 6;
    const auto top = eig_hermitian(a, req);
    ASSERT_EQ(top.size(), 6u);
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(top[i].value, full[i].value, 1e-10);
    const auto sel_full = select_pairs(full, FixedRule{4}, 60);
    const auto sel_top = select_pairs(top, FixedRule{4}, 60);
    EXPECT_LE((projection_oracle(sel_full, 60) - projection_oracle(sel_top, 60)).cwiseAbs().maxCoeff(), 1e-8);
  }
}

// The iterative backend on sparse storage agrees with the dense reference
// on eigenvalues and on the selected projection.
TEST(EigHermitian, LanczosBackendAgreesWithDense) {
  const Digraph g = testing::random_digraph(1200, 0.01, 21);
  const HermitianOperator dense_op = build_hermitian(g, Storage::Dense);
  const HermitianOperator sparse_op = build_hermitian(g, Storage::Sparse);
  EigRequest dense_req;
  dense_req.count = 6;
  dense_req.backend = EigBackend::Dense;
  EigRequest lanczos_req = dense_req;
  lanczos_req.backend = EigBackend::Lanczos;
  const auto d = eig_hermitian(dense_op, dense_req);
  const auto l = eig_hermitian(sparse_op, lanczos_req);
  ASSERT_EQ(d.size(), l.size());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(d[i].value, l[i].value, 1e-8);
  for (const auto& p : l) {
    EXPECT_LE((sparse_op.apply(p.vector) - p.value * p.vector).norm(), 1e-8 * std::abs(l[0].value));
  }
  const auto sd = select_pairs(d, FixedRule{4}, 1200);
  const auto sl = select_pairs(l, FixedRule{4}, 1200);
  const auto pd = projection_embedding(sd, 1200, ProjectionMode::Full).features;
  const auto pl = projection_embedding(sl, 1200, ProjectionMode::Full).features;
  EXPECT_LE((pd - pl).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(EigHermitian, RealificationAgreesWithComplexSolverOnNonImaginaryInput) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::Index n = 10 + static_cast<Eigen::Index>(seed * 9);
    const Eigen::MatrixXcd a = testing::random_hermitian(n, 500 + seed, false);
    const HermitianOperator h = HermitianOperator::from_dense(a);
    const Eigen::VectorXd doubled = dense_symmetric_eigen(h.realified_dense(), false).values;
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(a).eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
      EXPECT_NEAR(doubled[2 * i], ref[i], 1e-8);
      EXPECT_NEAR(doubled[2 * i + 1], ref[i], 1e-8);
    }
  }
}

TEST(EigRandomWalk, VectorsAreEigenvectorsOfRandomWalkOperator) {
  const Digraph g = testing::random_digraph(30, 0.15, 4, true);
  const HermitianOperator a = build_hermitian(g);
  const DegreeVector d = absolute_degrees(a);
  const Eigen::MatrixXcd rw = normalize_rw(a, d).to_dense();
  for (const auto& p : eig_random_walk(a, d)) {
    EXPECT_NEAR(p.vector.norm(), 1.0, 1e-10);
    EXPECT_LE((rw * p.vector - p.value * p.vector).norm(), 1e-8);
    EXPECT_LE(std::abs(p.value), 1.0 + 1e-12);
  }
}

TEST(SelectPairs, Examples) {
  const auto pairs = fake_pairs({2, -2, 0.1, -0.1});
  EXPECT_EQ(values_of(select_pairs(pairs, ThresholdRule{1.0}, 6)), (std::vector<double>{2, -2}));
  EXPECT_EQ(values_of(select_pairs(pairs, FixedRule{2}, 6)), (std::vector<double>{2, -2}));
  EXPECT_EQ(select_pairs(pairs, FixedRule{3}, 6).size(), 4u);
  EXPECT_EQ(select_pairs(pairs, FixedRule{1}, 6).size(), 2u);
  EXPECT_TRUE(select_pairs(pairs, FixedRule{0}, 6).empty());
  EXPECT_THROW(select_pairs(pairs, FixedRule{7}, 6), std::invalid_argument);
  EXPECT_TRUE(select_pairs(pairs, ThresholdRule{5.0}, 6).empty());
}

TEST(SelectPairs, TieToleranceIsAbsoluteNearUnitScale) {
  const auto pairs = fake_pairs({1.0, -1.0 + 5e-10, 0.5 + 2e-9, -0.5});
  EXPECT_EQ(select_pairs(pairs, FixedRule{1}, 6).size(), 2u);
  EXPECT_EQ(select_pairs(pairs, FixedRule{3}, 6).size(), 3u);
}

TEST(DefaultPairCount, EvenKeepsOddDrops) {
  EXPECT_EQ(default_pair_count(4), 4);
  EXPECT_EQ(default_pair_count(5), 4);
  EXPECT_EQ(default_pair_count(1), 0);
  EXPECT_THROW(default_pair_count(0), std::invalid_argument);
}

TEST(Epsilon, Examples) {
  EXPECT_NEAR(default_epsilon(std::exp(1.0) / 100.0, 100.0), 10.0 * std::sqrt(std::exp(1.0)), 1e-12);
  EXPECT_NEAR(default_epsilon(std::exp(1.0) / 100.0, 100.0), 16.487, 1e-3);
  EXPECT_THROW(default_epsilon(0.01, 100.0), std::invalid_argument);
  EXPECT_THROW(default_epsilon(0.005, 100.0), std::invalid_argument);
  // 20 * sqrt(250 * log(100)), evaluated independently: 678.6140424415112
  EXPECT_NEAR(concentration_epsilon(0.5, 5, 100.0), 678.6140424415112, 1e-9);
  EXPECT_THROW(concentration_epsilon(0.5, 5, 1.0), std::invalid_argument);
}

TEST(ProjectionEmbedding, Examples) {
  const auto pairs = eig_hermitian(two_cycle());
  const auto full = projection_embedding(pairs, 2, ProjectionMode::Full);
  EXPECT_LE((full.features - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(full.pairs_used, 2);

  const auto none = projection_embedding({}, 5);
  EXPECT_EQ(none.features.rows(), 5);
  EXPECT_EQ(none.features.cwiseAbs().sum(), 0.0);
  EXPECT_EQ(projection_embedding({}, 5, ProjectionMode::Full).features, Eigen::MatrixXd::Zero(5, 5));
}

TEST(ProjectionEmbedding, CyclicExpectedMatrixHasRankTwoAndClusterConstantRows) {
  const int n = 4;
  const auto pairs = eig_hermitian(cyclic3_expected(n));
  const auto selected = select_pairs(pairs, ThresholdRule{1e-8}, 3 * n);
  ASSERT_EQ(selected.size(), 2u);
  const auto factor = projection_embedding(selected, 3 * n);
  EXPECT_EQ(factor.features.cols(), 2);
  const Eigen::MatrixXd p = projection_embedding(selected, 3 * n, ProjectionMode::Full).features;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
  EXPECT_EQ((es.eigenvalues().array() > 0.5).count(), 2);
  for (int c = 0; c < 3; ++c) {
    for (int u = 1; u < n; ++u) {
      EXPECT_LE((p.row(c * n + u) - p.row(c * n)).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LE((factor.features.row(c * n + u) - factor.features.row(c * n)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(ProjectionEmbedding, IdempotentSymmetricAndFactorConsistent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index n = 6 + static_cast<Eigen::Index>(seed % 25);
    const Eigen::MatrixXcd a = testing::random_hermitian(n, 900 + seed, true);
    const auto pairs = eig_hermitian(a);
    const auto selected = select_pairs(pairs, FixedRule{2 + static_cast<Eigen::Index>(seed % 4)}, n);
    const Eigen::MatrixXd p = projection_embedding(selected, n, ProjectionMode::Full).features;
    EXPECT_LE((p * p - p).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LE((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-7);
    const Eigen::MatrixXcd oracle = projection_oracle(selected, n);
    EXPECT_LE((oracle.real() - p).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE(oracle.imag().cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(projection_imaginary_norm(selected), oracle.imag().norm(), 1e-10);
    const Eigen::MatrixXd u = projection_embedding(selected, n).features;
    EXPECT_EQ(u.cols(), static_cast<Eigen::Index>(selected.size()));
    EXPECT_LE((u * u.transpose() - p).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(ProjectionEmbedding, UnpairedSpectrumIsReported) {
  const auto pairs = eig_hermitian(two_cycle());
  const std::vector<EigenPair> half = {pairs[0]};
  EXPECT_GT(projection_imaginary_norm(half), 0.5);
  try {
    projection_embedding(half, 2);
    FAIL() << "expected an unpaired spectrum error";
  } catch (const std::logic_error& e) {
    EXPECT_NE(std::string(e.what()).find("unpaired spectrum"), std::string::npos);
  }
}

TEST(EigvecEmbedding, Examples) {
  EigenPair g{1.0, Eigen::VectorXcd(2)};
  g.vector << cd(1.0 / std::sqrt(2.0), 0.0), cd(0.0, 1.0 / std::sqrt(2.0));
  const std::vector<EigenPair> single = {g};
  const Eigen::MatrixXd f = eigvec_embedding(single).features;
  ASSERT_EQ(f.cols(), 2);
  EXPECT_NEAR(f(0, 0), 0.7071, 1e-4);
  EXPECT_NEAR(f(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(f(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(f(1, 1), 0.7071, 1e-4);

  const Eigen::MatrixXd both = eigvec_embedding(eig_hermitian(two_cycle())).features;
  EXPECT_EQ(both.cols(), 4);
  EXPECT_GT((both.row(0) - both.row(1)).norm(), 0.5);

  EXPECT_THROW(eigvec_embedding({}), std::invalid_argument);
}

}  // namespace
}  // namespace hermclust
