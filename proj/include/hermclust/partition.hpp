#pragma once
// Vertex-to-cluster labelings.

#include <iosfwd>
#include <string>
#include <vector>

namespace hermclust {

struct Partition {
  std::vector<int> labels;
  int k = 0;

  // Throws std::invalid_argument unless k >= 1 and every label is in [0, k).
  void validate() const;
  std::size_t size() const { return labels.size(); }
  std::vector<int> cluster_sizes() const;
  int empty_clusters() const;
  std::vector<std::vector<int>> members() const;

  // k = max label + 1.
  static Partition from_labels(std::vector<int> labels);
  friend bool operator==(const Partition&, const Partition&) = default;
};

// One label per line; `#` lines are comments. k is max label + 1 unless
// `k` >= 1 is given.
Partition read_partition(std::istream& in, int k = 0);
Partition read_partition_file(const std::string& path, int k = 0);
void write_partition(std::ostream& out, const Partition& p);

}  // namespace hermclust
