#include "hermclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hermclust/assignment.hpp"

namespace hermclust {
namespace {

double choose2(double x) { return 0.5 * x * (x - 1.0); }

void check_same_size(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("partitions have different lengths (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  a.validate();
  b.validate();
}

Eigen::MatrixXd contingency(const Partition& a, const Partition& b) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(a.k, b.k);
  for (std::size_t u = 0; u < a.size(); ++u) t(a.labels[u], b.labels[u]) += 1.0;
  return t;
}

// Membership mask of one vertex set; throws on invalid or repeated ids.
std::vector<char> mask_of(const Digraph& g, std::span<const int> set, std::vector<char>* other) {
  std::vector<char> mask(static_cast<std::size_t>(g.num_vertices()), 0);
  for (int v : set) {
    if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("vertex id out of range in cut set");
    if (other != nullptr && (*other)[v]) throw std::invalid_argument("cut sets must be disjoint");
    mask[v] = 1;
  }
  return mask;
}

double volume(const Digraph& g, std::span<const int> set) {
  const auto out = g.out_weights();
  const auto in = g.in_weights();
  double vol = 0.0;
  for (int v : set) vol += out[v] + in[v];
  return vol;
}

double imbalance(double forward, double backward) {
  const double total = forward + backward;
  return total > 0.0 ? 0.5 * std::abs(forward - backward) / total : 0.0;
}

// W(j, l) = w(C_j, C_l).
Eigen::MatrixXd cluster_flows(const Digraph& g, const Partition& p) {
  if (static_cast<int>(p.size()) != g.num_vertices()) {
    throw std::invalid_argument("partition length does not match the graph");
  }
  p.validate();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p.k, p.k);
  for (const Edge& e : g.edges()) w(p.labels[e.source], p.labels[e.target]) += e.weight;
  return w;
}

}  // namespace

double ari(const Partition& a, const Partition& b) {
  check_same_size(a, b);
  const Eigen::MatrixXd t = contingency(a, b);
  double index = 0.0;
  for (Eigen::Index i = 0; i < t.size(); ++i) index += choose2(t.data()[i]);
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i) sum_a += choose2(t.row(i).sum());
  for (Eigen::Index j = 0; j < t.cols(); ++j) sum_b += choose2(t.col(j).sum());
  const double pairs = choose2(static_cast<double>(a.size()));
  if (pairs == 0.0) return 1.0;
  const double expected = sum_a * sum_b / pairs;
  const double maximum = 0.5 * (sum_a + sum_b);
  const double denom = maximum - expected;
  if (denom == 0.0) return 1.0;
  return (index - expected) / denom;
}

long long misclassified(const Partition& pred, const Partition& truth) {
  check_same_size(pred, truth);
  if (pred.k != truth.k) {
    throw std::invalid_argument("misclassified needs equal cluster counts (" + std::to_string(pred.k) + " vs " +
                                std::to_string(truth.k) + "); use ARI across different k");
  }
  const Eigen::MatrixXd t = contingency(truth, pred);
  const auto ts = truth.cluster_sizes();
  const auto ps = pred.cluster_sizes();
  // cost(j, s) = |A_s xor C_j| = |A_s| + |C_j| - 2 |A_s and C_j|
  Eigen::MatrixXd cost(truth.k, truth.k);
  for (int j = 0; j < truth.k; ++j) {
    for (int s = 0; s < truth.k; ++s) cost(j, s) = ps[s] + ts[j] - 2.0 * t(j, s);
  }
  return std::llround(solve_assignment(cost).cost);
}

CutWeights cut_weights(const Digraph& g, std::span<const int> x, std::span<const int> y) {
  std::vector<char> in_x = mask_of(g, x, nullptr);
  const std::vector<char> in_y = mask_of(g, y, &in_x);
  CutWeights w;
  for (const Edge& e : g.edges()) {
    if (in_x[e.source] && in_y[e.target]) w.forward += e.weight;
    if (in_y[e.source] && in_x[e.target]) w.backward += e.weight;
  }
  return w;
}

double ci(const Digraph& g, std::span<const int> x, std::span<const int> y) {
  const CutWeights w = cut_weights(g, x, y);
  return imbalance(w.forward, w.backward);
}

double ci_size(const Digraph& g, std::span<const int> x, std::span<const int> y) {
  return ci(g, x, y) * static_cast<double>(std::min(x.size(), y.size()));
}

double ci_vol(const Digraph& g, std::span<const int> x, std::span<const int> y) {
  return ci(g, x, y) * std::min(volume(g, x), volume(g, y));
}

PairScoreKind parse_pair_score_kind(std::string_view name) {
  if (name == "ci") return PairScoreKind::Ci;
  if (name == "ci_size" || name == "ci-size") return PairScoreKind::CiSize;
  if (name == "ci_vol" || name == "ci-vol") return PairScoreKind::CiVol;
  throw std::invalid_argument("unknown pair score '" + std::string(name) + "' (valid: ci, ci_size, ci_vol)");
}

std::string_view pair_score_kind_name(PairScoreKind kind) {
  switch (kind) {
    case PairScoreKind::Ci: return "ci";
    case PairScoreKind::CiSize: return "ci_size";
    case PairScoreKind::CiVol: return "ci_vol";
  }
  return "ci";
}

double score_of(const PairScore& s, PairScoreKind kind) {
  switch (kind) {
    case PairScoreKind::Ci: return s.ci;
    case PairScoreKind::CiSize: return s.ci_size;
    case PairScoreKind::CiVol: return s.ci_vol;
  }
  return s.ci;
}

std::vector<PairScore> pair_scores(const Digraph& g, const Partition& p) {
  const Eigen::MatrixXd w = cluster_flows(g, p);
  const auto sizes = p.cluster_sizes();
  std::vector<double> vol(static_cast<std::size_t>(p.k), 0.0);
  const auto out = g.out_weights();
  const auto in = g.in_weights();
  for (std::size_t u = 0; u < p.size(); ++u) vol[p.labels[u]] += out[u] + in[u];
  std::vector<PairScore> scores;
  for (int a = 0; a < p.k; ++a) {
    if (sizes[a] == 0) continue;
    for (int b = a + 1; b < p.k; ++b) {
      if (sizes[b] == 0) continue;
      PairScore s{a, b, imbalance(w(a, b), w(b, a)), 0.0, 0.0};
      s.ci_size = s.ci * std::min(sizes[a], sizes[b]);
      s.ci_vol = s.ci * std::min(vol[a], vol[b]);
      scores.push_back(s);
    }
  }
  return scores;
}

std::vector<PairScore> top_pairs(const Digraph& g, const Partition& p, PairScoreKind kind, std::size_t m) {
  std::vector<PairScore> scores = pair_scores(g, p);
  std::stable_sort(scores.begin(), scores.end(), [kind](const PairScore& x, const PairScore& y) {
    const double sx = score_of(x, kind);
    const double sy = score_of(y, kind);
    if (sx != sy) return sx > sy;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });
  if (scores.size() > m) scores.resize(m);
  return scores;
}

Eigen::MatrixXd ci_matrix(const Digraph& g, const Partition& p) {
  const Eigen::MatrixXd w = cluster_flows(g, p);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(p.k, p.k);
  for (int j = 0; j < p.k; ++j) {
    for (int l = 0; l < p.k; ++l) {
      if (j == l) continue;
      const double total = w(j, l) + w(l, j);
      if (total > 0.0) out(j, l) = (w(j, l) - w(l, j)) / total;
    }
  }
  return out;
}

void write_pair_scores_csv(std::ostream& out, std::span<const PairScore> scores) {
  out << "a,b,ci,ci_size,ci_vol\n";
  out.precision(17);
  for (const auto& s : scores) out << s.a << ',' << s.b << ',' << s.ci << ',' << s.ci_size << ',' << s.ci_vol << '\n';
}

}  // namespace hermclust
