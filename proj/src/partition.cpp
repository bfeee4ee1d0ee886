#include "hermclust/partition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hermclust {

void Partition::validate() const {
  if (k < 1) throw std::invalid_argument("partition needs k >= 1");
  for (int l : labels) {
    if (l < 0 || l >= k) {
      throw std::invalid_argument("cluster id " + std::to_string(l) + " outside [0, " + std::to_string(k) + ")");
    }
  }
}

std::vector<int> Partition::cluster_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(std::max(k, 0)), 0);
  for (int l : labels) ++sizes[l];
  return sizes;
}

int Partition::empty_clusters() const {
  const auto sizes = cluster_sizes();
  return static_cast<int>(std::count(sizes.begin(), sizes.end(), 0));
}

std::vector<std::vector<int>> Partition::members() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(std::max(k, 0)));
  for (std::size_t u = 0; u < labels.size(); ++u) out[labels[u]].push_back(static_cast<int>(u));
  return out;
}

Partition Partition::from_labels(std::vector<int> labels) {
  Partition p;
  p.k = labels.empty() ? 1 : *std::max_element(labels.begin(), labels.end()) + 1;
  p.labels = std::move(labels);
  p.validate();
  return p;
}

Partition read_partition(std::istream& in, int k) {
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long v = 0;
    if (!(ls >> v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw std::invalid_argument("partition line " + std::to_string(line_no) + ": expected a cluster id");
    }
    std::string rest;
    if (ls >> rest || v < 0 || v > 1'000'000'000) {
      throw std::invalid_argument("partition line " + std::to_string(line_no) + ": malformed cluster id");
    }
    labels.push_back(static_cast<int>(v));
  }
  if (k >= 1) {
    Partition p{std::move(labels), k};
    p.validate();
    return p;
  }
  return Partition::from_labels(std::move(labels));
}

Partition read_partition_file(const std::string& path, int k) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open partition file " + path);
  return read_partition(in, k);
}

void write_partition(std::ostream& out, const Partition& p) {
  for (int l : p.labels) out << l << '\n';
}

}  // namespace hermclust
