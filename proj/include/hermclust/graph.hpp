#pragma once
// Weighted directed graphs and the real matrices derived from them.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hermclust {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct Edge {
  int source = 0;
  int target = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Counters reported by canonicalization of raw edge records.
struct IngestStats {
  std::size_t records = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_merged = 0;
};

// Directed graph with nonnegative edge weights. Edges are canonical: sorted by
// (source, target), no self-loops, at most one record per ordered pair.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n_vertices);

  // Canonicalizes raw records: self-loops are dropped and duplicate ordered
  // pairs sum their weights. Throws std::invalid_argument on out-of-range ids
  // or negative/non-finite weights.
  static Digraph from_edges(int n_vertices, std::span<const Edge> records,
                            IngestStats* stats = nullptr);

  int num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // w(u -> v), zero when absent.
  double weight(int u, int v) const;

  std::vector<double> out_weights() const;
  std::vector<double> in_weights() const;
  double total_weight() const;

  // Every edge u -> v becomes v -> u.
  Digraph reversed() const;
  // Every weight multiplied by `factor` (> 0).
  Digraph scaled(double factor) const;

  // Real weighted adjacency M with M(u, v) = w(u -> v).
  SparseMatrix adjacency() const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

// Edge-list text: `src dst [weight]` per line, `#` comments, 0-indexed.
// The vertex count is `n_vertices` when >= 0, else the value of a
// `# vertices N` comment, else max id + 1.
Digraph read_edge_list(std::istream& in, int n_vertices = -1,
                       IngestStats* stats = nullptr);
Digraph read_edge_list_file(const std::string& path, int n_vertices = -1,
                            IngestStats* stats = nullptr);
void write_edge_list(std::ostream& out, const Digraph& g,
                     std::span<const std::string> header_comments = {});

// Square numeric CSV, row j column l = M(j, l).
Eigen::MatrixXd read_dense_csv(std::istream& in);
Eigen::MatrixXd read_dense_csv_file(const std::string& path);

// S = M + M^T.
SparseMatrix symmetrize_naive(const Digraph& g);

struct CoclusterProducts {
  SparseMatrix left;   // M^T M: common parents
  SparseMatrix right;  // M M^T: common children
  SparseMatrix sum;    // M^T M + M M^T
};
CoclusterProducts cocluster_products(const Digraph& g);

// Edge j -> l carries M~(j, l) = M(j, l) / (M(j, l) + M(l, j)); pairs with no
// flow in either direction carry nothing. Throws on non-square or negative
// input.
Digraph net_flow_transform(const Eigen::MatrixXd& flows);

// Entrywise min(M(j, l), cap). cap may be +infinity.
Eigen::MatrixXd cap_entries(const Eigen::MatrixXd& m, double cap);

}  // namespace hermclust
