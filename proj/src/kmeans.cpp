#include "hermclust/kmeans.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hermclust/kernels/kernels.hpp"

namespace hermclust {
namespace {

using Eigen::Index;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Run {
  std::vector<int> labels;
  RowMatrix centroids;
  double cost = 0.0;
  int iterations = 0;
  int repairs = 0;
  std::vector<double> history;
};

// Assigns every row to its nearest centroid; returns the total cost.
double assign(const RowMatrix& x, const RowMatrix& c, std::vector<int>& labels, std::vector<double>& dist) {
  const auto& kt = kernels::active();
  const auto d = static_cast<std::size_t>(x.cols());
  const auto k = static_cast<std::size_t>(c.rows());
  double cost = 0.0;
  for (Index u = 0; u < x.rows(); ++u) {
    labels[u] = static_cast<int>(kt.nearest_centroid(x.row(u).data(), c.data(), k, d, &dist[u]));
    cost += dist[u];
  }
  return cost;
}

// Moves the point farthest from its centroid into each empty cluster. Only
// clusters with at least two members donate, so no cluster is emptied.
int repair_empty(const RowMatrix& x, RowMatrix& c, std::vector<int>& labels, std::vector<double>& dist) {
  const Index k = c.rows();
  std::vector<Index> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[l];
  int repairs = 0;
  for (Index j = 0; j < k; ++j) {
    if (sizes[j] > 0) continue;
    Index far = -1;
    for (Index u = 0; u < x.rows(); ++u) {
      if (sizes[labels[u]] < 2) continue;
      if (far < 0 || dist[u] > dist[far]) far = u;
    }
    if (far < 0) throw std::logic_error("k-means repair found no donor cluster");
    --sizes[labels[far]];
    labels[far] = static_cast<int>(j);
    ++sizes[j];
    dist[far] = 0.0;
    c.row(j) = x.row(far);
    ++repairs;
  }
  return repairs;
}

void update_centroids(const RowMatrix& x, const std::vector<int>& labels, RowMatrix& c) {
  const Index k = c.rows();
  RowMatrix sum = RowMatrix::Zero(k, x.cols());
  std::vector<Index> count(static_cast<std::size_t>(k), 0);
  for (Index u = 0; u < x.rows(); ++u) {
    sum.row(labels[u]) += x.row(u);
    ++count[labels[u]];
  }
  for (Index j = 0; j < k; ++j) {
    if (count[j] > 0) c.row(j) = sum.row(j) / static_cast<double>(count[j]);
  }
}

double cost_of(const RowMatrix& x, const std::vector<int>& labels, const RowMatrix& c) {
  const auto& kt = kernels::active();
  const auto d = static_cast<std::size_t>(x.cols());
  double cost = 0.0;
  for (Index u = 0; u < x.rows(); ++u) cost += kt.squared_distance(x.row(u).data(), c.row(labels[u]).data(), d);
  return cost;
}

Run lloyd(const RowMatrix& x, int k, const KmeansOptions& options, RngStream rng) {
  Run run;
  const Index n = x.rows();
  const std::vector<Index> seeds = kmeanspp_seed(x, k, rng);
  run.centroids.resize(k, x.cols());
  for (int j = 0; j < k; ++j) run.centroids.row(j) = x.row(seeds[j]);
  run.labels.assign(static_cast<std::size_t>(n), 0);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);

  double previous = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    assign(x, run.centroids, run.labels, dist);
    run.repairs += repair_empty(x, run.centroids, run.labels, dist);
    double cost = 0.0;
    for (double v : dist) cost += v;
    assert(cost <= previous * (1.0 + 1e-12) + 1e-12);
    run.history.push_back(cost);
    update_centroids(x, run.labels, run.centroids);
    run.iterations = iter;
    if (cost == 0.0 || previous - cost < options.tol * previous) break;
    previous = cost;
  }
  run.cost = cost_of(x, run.labels, run.centroids);
  return run;
}

}  // namespace

std::vector<Index> kmeanspp_seed(const Eigen::MatrixXd& features, int k, RngStream& rng) {
  const Index n = features.rows();
  if (k < 1 || n < k) throw std::invalid_argument("k-means++ needs 1 <= k <= N");
  const RowMatrix x = features;
  const auto d = static_cast<std::size_t>(x.cols());
  const auto& kt = kernels::active();
  std::vector<Index> chosen;
  chosen.push_back(static_cast<Index>(rng.below(static_cast<std::uint64_t>(n))));
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Index u = 0; u < n; ++u) d2[u] = kt.squared_distance(x.row(u).data(), x.row(chosen[0]).data(), d);
  while (static_cast<int>(chosen.size()) < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    Index pick = n - 1;
    if (total > 0.0) {
      const double target = rng.next_uniform() * total;
      double acc = 0.0;
      for (Index u = 0; u < n; ++u) {
        acc += d2[u];
        if (d2[u] > 0.0 && acc > target) {
          pick = u;
          break;
        }
      }
      // Rounding can leave acc <= target at the end; take the last candidate.
      while (d2[pick] <= 0.0) --pick;
    } else {
      pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
    }
    chosen.push_back(pick);
    for (Index u = 0; u < n; ++u) {
      d2[u] = std::min(d2[u], kt.squared_distance(x.row(u).data(), x.row(pick).data(), d));
    }
  }
  return chosen;
}

KmeansResult kmeans(const Eigen::MatrixXd& features, int k, const KmeansOptions& options) {
  const Index n = features.rows();
  if (k < 1) throw std::invalid_argument("k-means needs k >= 1");
  if (n < k) {
    throw std::invalid_argument("k-means needs at least k points (N=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + ")");
  }
  if (!features.allFinite()) throw std::invalid_argument("k-means features must be finite");
  if (options.restarts < 1 || options.max_iter < 1 || !(options.tol >= 0.0)) {
    throw std::invalid_argument("k-means needs restarts >= 1, max_iter >= 1 and tol >= 0");
  }
  const RowMatrix x = features;
  const CounterRng rng(options.seed);
  Run best;
  int best_index = -1;
  for (int r = 0; r < options.restarts; ++r) {
    Run run = lloyd(x, k, options, rng.stream(static_cast<std::uint64_t>(r)));
    if (best_index < 0 || run.cost < best.cost) {
      best = std::move(run);
      best_index = r;
    }
  }
  KmeansResult out;
  out.labels = std::move(best.labels);
  out.centroids = best.centroids;
  out.cost = best.cost;
  out.iterations = best.iterations;
  out.repairs = best.repairs;
  out.restart = best_index;
  out.cost_history = std::move(best.history);
  return out;
}

double kmeans_cost(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                   const Eigen::MatrixXd& centroids) {
  if (static_cast<Index>(labels.size()) != features.rows()) {
    throw std::invalid_argument("label count does not match feature rows");
  }
  if (centroids.cols() != features.cols()) throw std::invalid_argument("centroid dimension mismatch");
  double cost = 0.0;
  for (Index u = 0; u < features.rows(); ++u) {
    const int l = labels[u];
    if (l < 0 || l >= centroids.rows()) throw std::invalid_argument("label out of range");
    cost += (features.row(u) - centroids.row(l)).squaredNorm();
  }
  return cost;
}

}  // namespace hermclust
