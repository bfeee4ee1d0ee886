#pragma once
// Minimum-cost perfect assignment on a square cost matrix (Hungarian method
// with potentials, O(k^3)).

#include <Eigen/Dense>

#include <vector>

namespace hermclust {

struct Assignment {
  std::vector<int> column_of_row;
  double cost = 0.0;
};

Assignment solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace hermclust
