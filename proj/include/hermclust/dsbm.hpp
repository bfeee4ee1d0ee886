#pragma once
// Directed stochastic block model: parameters, meta-graphs, sampling and the
// spectral quantities of the meta matrix.

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "json.hpp"

#include "hermclust/graph.hpp"
#include "hermclust/operators.hpp"
#include "hermclust/partition.hpp"

namespace hermclust {

enum class MetaGraph { Cyclic, Complete, Explicit };

std::string_view meta_graph_name(MetaGraph m);
MetaGraph parse_meta_graph(std::string_view name);

struct DsbmParams {
  int k = 2;
  int n = 1;     // vertices per cluster
  double p = 0;  // in-cluster edge probability
  double q = 0;  // cross-cluster edge probability
  Eigen::MatrixXd F;
  MetaGraph meta = MetaGraph::Explicit;
  double eta = 0.0;
  // Seed used to orient a complete meta-graph.
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless k >= 1, n >= 1, p, q in [0, 1], F is
  // k x k with entries in [0, 1], F(j, l) + F(l, j) = 1 within 1e-12 and the
  // diagonal is exactly 1/2.
  void validate() const;
  int num_vertices() const { return k * n; }
};

// F(j, j+1) = 1 - eta, F(j+1, j) = eta (indices mod k), 1/2 elsewhere.
Eigen::MatrixXd cyclic_F(int k, double eta);
// Each unordered pair {j, l} is oriented uniformly at random; the oriented
// pair gets (1 - eta, eta).
Eigen::MatrixXd complete_random_F(int k, double eta, std::uint64_t seed);

DsbmParams cyclic_params(int k, int n, double p, double q, double eta);
DsbmParams complete_params(int k, int n, double p, double q, double eta, std::uint64_t seed);

struct LabeledGraph {
  Digraph graph;
  Partition truth;  // vertex u belongs to cluster u / n
};

// Pair {u, v} (u < v) exists with probability p or q and is oriented u -> v
// with probability F(c(u), c(v)). Existence and orientation use separate
// streams keyed by the pair, so one seed couples graphs across F.
LabeledGraph sample(const DsbmParams& params, std::uint64_t seed);

// (2F - 1) i
Eigen::MatrixXcd f_tilde(const Eigen::MatrixXd& F);

struct MetaSpectrum {
  Eigen::VectorXd eigenvalues;  // of f_tilde(F), |rho| descending
  double rho_tilde = 0.0;       // min |rho| over |rho| > 1e-10, 0 if none
  double theta = 0.0;           // min row distance of the projection onto Im(F~)
  int rank = 0;
};

inline constexpr double kMetaRankCutoff = 1e-10;

MetaSpectrum meta_spectrum(const Eigen::MatrixXd& F);

// In-cluster blocks are zero; block (j, l) is q (2 F(j, l) - 1) i.
HermitianOperator expected_adjacency(const DsbmParams& params, Storage storage = Storage::Dense);

struct AssumptionCheck {
  bool pass = false;
  bool nondistinguishing = false;
  double rhs = 0.0;     // C (k / theta) sqrt(log n / (p n))
  double margin = 0.0;  // rho_tilde / rhs
};

AssumptionCheck assumption_check(double rho_tilde, double theta, int k, double n, double p, double C);
AssumptionCheck assumption_check(const DsbmParams& params, double C);

// Order-of-magnitude diagnostics with all constants set to 1, not
// quantitative predictions.
double misclassification_bound(int k, double rho_tilde, double theta, double p, double n);
double misclassification_bound(const DsbmParams& params);
// k^4 log n / ((1 - 2 eta)^2 p); +infinity for eta >= 1/2.
double cyclic_misclassification_bound(int k, double eta, double p, double n);

nlohmann::json params_to_json(const DsbmParams& params);
DsbmParams params_from_json(const nlohmann::json& doc);

}  // namespace hermclust
