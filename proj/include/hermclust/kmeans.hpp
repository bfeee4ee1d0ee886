#pragma once
// k-means++ seeded Lloyd clustering of feature rows.

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "hermclust/rng.hpp"

namespace hermclust {

struct KmeansOptions {
  int restarts = 10;
  int max_iter = 100;
  // Stop when the relative cost improvement of an iteration drops below tol.
  double tol = 1e-6;
  std::uint64_t seed = 0;
};

struct KmeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;  // k x d
  double cost = 0.0;
  int iterations = 0;
  // Empty clusters refilled during the winning restart.
  int repairs = 0;
  int restart = 0;
  // Cost after every assignment step of the winning restart (non-increasing).
  std::vector<double> cost_history;
};

// Best of `restarts` runs by cost (ties: lowest restart index). Restart r
// draws from stream r of CounterRng(seed). Throws std::invalid_argument when
// k < 1, N < k or a feature is not finite.
KmeansResult kmeans(const Eigen::MatrixXd& features, int k, const KmeansOptions& options = {});

// sum_u ||x_u - c_label(u)||^2.
double kmeans_cost(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                   const Eigen::MatrixXd& centroids);

// Row indices chosen by k-means++: the first uniformly, each further one with
// probability proportional to its squared distance to the nearest chosen row.
std::vector<Eigen::Index> kmeanspp_seed(const Eigen::MatrixXd& features, int k, RngStream& rng);

}  // namespace hermclust
