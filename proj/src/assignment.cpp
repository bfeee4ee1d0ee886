#include "hermclust/assignment.hpp"

#include <limits>
#include <stdexcept>

namespace hermclust {

Assignment solve_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) throw std::invalid_argument("assignment needs a square cost matrix");
  if (!cost.allFinite()) throw std::invalid_argument("assignment costs must be finite");
  const int n = static_cast<int>(cost.rows());
  Assignment out;
  out.column_of_row.assign(static_cast<std::size_t>(n), -1);
  if (n == 0) return out;
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; row_of[c] is the row matched to column c (0 = free).
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<int> row_of(n + 1, 0);
  std::vector<int> way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    row_of[0] = i;
    int c0 = 0;
    std::vector<double> min_slack(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[c0] = true;
      const int r0 = row_of[c0];
      double delta = inf;
      int c1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double slack = cost(r0 - 1, c - 1) - u[r0] - v[c];
        if (slack < min_slack[c]) {
          min_slack[c] = slack;
          way[c] = c0;
        }
        if (min_slack[c] < delta) {
          delta = min_slack[c];
          c1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          u[row_of[c]] += delta;
          v[c] -= delta;
        } else {
          min_slack[c] -= delta;
        }
      }
      c0 = c1;
    } while (row_of[c0] != 0);
    do {
      const int c1 = way[c0];
      row_of[c0] = row_of[c1];
      c0 = c1;
    } while (c0 != 0);
  }
  for (int c = 1; c <= n; ++c) out.column_of_row[row_of[c] - 1] = c - 1;
  for (int r = 0; r < n; ++r) out.cost += cost(r, out.column_of_row[r]);
  return out;
}

}  // namespace hermclust
