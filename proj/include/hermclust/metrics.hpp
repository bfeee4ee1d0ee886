#pragma once
// Partition agreement (ARI, misclassification count) and the cut-imbalance
// family for directed graphs.

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "hermclust/graph.hpp"
#include "hermclust/partition.hpp"

namespace hermclust {

// Adjusted Rand index (Hubert-Arabie). Returns 1 when the chance-corrected
// denominator vanishes, which happens only for identical trivial partitions.
double ari(const Partition& a, const Partition& b);

// min over cluster matchings sigma of sum_j |A_sigma(j) xor C_j|. Requires
// equal N and equal k.
long long misclassified(const Partition& pred, const Partition& truth);

struct CutWeights {
  double forward = 0.0;   // w(X, Y)
  double backward = 0.0;  // w(Y, X)
};

// Throws std::invalid_argument when X and Y intersect or hold invalid ids.
CutWeights cut_weights(const Digraph& g, std::span<const int> x, std::span<const int> y);

// 1/2 |w(X,Y) - w(Y,X)| / (w(X,Y) + w(Y,X)), 0 on an empty cut.
double ci(const Digraph& g, std::span<const int> x, std::span<const int> y);
// ci * min(|X|, |Y|)
double ci_size(const Digraph& g, std::span<const int> x, std::span<const int> y);
// ci * min(vol X, vol Y), vol = sum of in- and out-weights of the members.
double ci_vol(const Digraph& g, std::span<const int> x, std::span<const int> y);

struct PairScore {
  int a = 0;
  int b = 0;
  double ci = 0.0;
  double ci_size = 0.0;
  double ci_vol = 0.0;
};

enum class PairScoreKind { Ci, CiSize, CiVol };
PairScoreKind parse_pair_score_kind(std::string_view name);
std::string_view pair_score_kind_name(PairScoreKind kind);
double score_of(const PairScore& s, PairScoreKind kind);

// Every unordered pair of nonempty clusters.
std::vector<PairScore> pair_scores(const Digraph& g, const Partition& p);

// Pair scores sorted by `kind` descending (ties: (a, b) ascending), at most m.
std::vector<PairScore> top_pairs(const Digraph& g, const Partition& p, PairScoreKind kind, std::size_t m);

// Entry (j, l) = (w(C_j, C_l) - w(C_l, C_j)) / (w(C_j, C_l) + w(C_l, C_j)),
// 0 for an empty cut; antisymmetric.
Eigen::MatrixXd ci_matrix(const Digraph& g, const Partition& p);

// CSV with header `a,b,ci,ci_size,ci_vol`.
void write_pair_scores_csv(std::ostream& out, std::span<const PairScore> scores);

}  // namespace hermclust
