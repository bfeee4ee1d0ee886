#include "hermclust/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hermclust {

Digraph::Digraph(int n_vertices) : n_(n_vertices) {
  if (n_vertices < 0) throw std::invalid_argument("vertex count must be nonnegative");
}

Digraph Digraph::from_edges(int n_vertices, std::span<const Edge> records,
                            IngestStats* stats) {
  Digraph g(n_vertices);
  IngestStats local;
  local.records = records.size();
  g.edges_.reserve(records.size());
  for (const Edge& e : records) {
    if (e.source < 0 || e.source >= n_vertices || e.target < 0 || e.target >= n_vertices) {
      throw std::invalid_argument("edge (" + std::to_string(e.source) + ", " +
                                  std::to_string(e.target) + ") has a vertex id outside [0, " +
                                  std::to_string(n_vertices) + ")");
    }
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw std::invalid_argument("edge weights must be finite and nonnegative");
    }
    if (e.source == e.target) {
      ++local.self_loops_dropped;
      continue;
    }
    g.edges_.push_back(e);
  }
  std::stable_sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return a.source != b.source ? a.source < b.source : a.target < b.target;
  });
  std::size_t w = 0;
  for (std::size_t r = 0; r < g.edges_.size(); ++r) {
    if (w > 0 && g.edges_[w - 1].source == g.edges_[r].source &&
        g.edges_[w - 1].target == g.edges_[r].target) {
      g.edges_[w - 1].weight += g.edges_[r].weight;
      ++local.duplicates_merged;
    } else {
      g.edges_[w++] = g.edges_[r];
    }
  }
  g.edges_.resize(w);
  if (stats != nullptr) *stats = local;
  return g;
}

double Digraph::weight(int u, int v) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{u, v, 0.0},
                                   [](const Edge& a, const Edge& b) {
                                     return a.source != b.source ? a.source < b.source
                                                                 : a.target < b.target;
                                   });
  if (it != edges_.end() && it->source == u && it->target == v) return it->weight;
  return 0.0;
}

std::vector<double> Digraph::out_weights() const {
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (const Edge& e : edges_) out[e.source] += e.weight;
  return out;
}

std::vector<double> Digraph::in_weights() const {
  std::vector<double> in(static_cast<std::size_t>(n_), 0.0);
  for (const Edge& e : edges_) in[e.target] += e.weight;
  return in;
}

double Digraph::total_weight() const {
  double s = 0.0;
  for (const Edge& e : edges_) s += e.weight;
  return s;
}

Digraph Digraph::reversed() const {
  std::vector<Edge> r;
  r.reserve(edges_.size());
  for (const Edge& e : edges_) r.push_back({e.target, e.source, e.weight});
  return from_edges(n_, r);
}

Digraph Digraph::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
  Digraph g = *this;
  for (Edge& e : g.edges_) e.weight *= factor;
  return g;
}

SparseMatrix Digraph::adjacency() const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(edges_.size());
  for (const Edge& e : edges_) t.emplace_back(e.source, e.target, e.weight);
  SparseMatrix m(n_, n_);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Digraph read_edge_list(std::istream& in, int n_vertices, IngestStats* stats) {
  std::vector<Edge> records;
  std::string line;
  int max_id = -1;
  long long declared = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      // `# vertices N` (as written by write_edge_list) fixes the vertex count.
      std::istringstream cs(line.substr(hash + 1));
      std::string key;
      long long count = 0;
      if (cs >> key >> count && key == "vertices" && count >= 0) declared = count;
      line.erase(hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    long long src = 0;
    long long dst = 0;
    if (!(ls >> src >> dst)) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected `src dst [weight]`");
    }
    double w = 1.0;
    if (!(ls >> w)) {
      if (!ls.eof()) {
        throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                    ": malformed weight");
      }
      w = 1.0;
    }
    std::string rest;
    if (ls >> rest) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": trailing fields");
    }
    if (src < 0 || dst < 0 || src > std::numeric_limits<int>::max() ||
        dst > std::numeric_limits<int>::max()) {
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": vertex ids must be nonnegative 32-bit integers");
    }
    records.push_back({static_cast<int>(src), static_cast<int>(dst), w});
    max_id = std::max({max_id, static_cast<int>(src), static_cast<int>(dst)});
  }
  int n = n_vertices;
  if (n < 0) n = declared >= 0 ? static_cast<int>(declared) : max_id + 1;
  return Digraph::from_edges(n, records, stats);
}

Digraph read_edge_list_file(const std::string& path, int n_vertices, IngestStats* stats) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list '" + path + "'");
  return read_edge_list(in, n_vertices, stats);
}

void write_edge_list(std::ostream& out, const Digraph& g,
                     std::span<const std::string> header_comments) {
  for (const std::string& c : header_comments) out << "# " << c << '\n';
  out << "# vertices " << g.num_vertices() << '\n';
  out.precision(17);
  for (const Edge& e : g.edges()) {
    out << e.source << ' ' << e.target;
    if (e.weight != 1.0) out << ' ' << e.weight;
    out << '\n';
  }
}

Eigen::MatrixXd read_dense_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw std::invalid_argument("dense CSV: non-numeric cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != n) {
      throw std::invalid_argument("dense CSV must be square: row " + std::to_string(r) +
                                  " has " + std::to_string(rows[r].size()) + " cells, expected " +
                                  std::to_string(n));
    }
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Eigen::MatrixXd read_dense_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV '" + path + "'");
  return read_dense_csv(in);
}

SparseMatrix symmetrize_naive(const Digraph& g) {
  const SparseMatrix m = g.adjacency();
  SparseMatrix s = m + SparseMatrix(m.transpose());
  s.makeCompressed();
  return s;
}

CoclusterProducts cocluster_products(const Digraph& g) {
  const SparseMatrix m = g.adjacency();
  const SparseMatrix mt = m.transpose();
  CoclusterProducts out;
  out.left = (mt * m).pruned();
  out.right = (m * mt).pruned();
  out.sum = out.left + out.right;
  out.sum.makeCompressed();
  return out;
}

Digraph net_flow_transform(const Eigen::MatrixXd& flows) {
  if (flows.rows() != flows.cols()) {
    throw std::invalid_argument("net flow transform needs a square matrix");
  }
  if ((flows.array() < 0.0).any() || !flows.allFinite()) {
    throw std::invalid_argument("net flow transform needs finite nonnegative entries");
  }
  const auto n = flows.rows();
  std::vector<Edge> edges;
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index l = 0; l < n; ++l) {
      if (j == l) continue;
      const double total = flows(j, l) + flows(l, j);
      if (total == 0.0 || flows(j, l) == 0.0) continue;
      edges.push_back({static_cast<int>(j), static_cast<int>(l), flows(j, l) / total});
    }
  }
  return Digraph::from_edges(static_cast<int>(n), edges);
}

Eigen::MatrixXd cap_entries(const Eigen::MatrixXd& m, double cap) {
  return m.array().min(cap).matrix();
}

}  // namespace hermclust
