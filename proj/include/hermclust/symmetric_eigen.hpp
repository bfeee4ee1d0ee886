#pragma once
// Real symmetric eigensolvers: dense (LAPACK dsyevr) and a thick-restart
// Lanczos solver for the extreme part of the spectrum of a matrix-free
// operator.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

namespace hermclust {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending for the dense routines
  Eigen::MatrixXd vectors;  // column j pairs with values[j]
};

// Full spectrum (values ascending). `with_vectors == false` leaves vectors empty.
SymmetricEigen dense_symmetric_eigen(const Eigen::MatrixXd& a, bool with_vectors = true);

// Eigenpairs with ascending indices [first, last] (0-based, inclusive).
SymmetricEigen dense_symmetric_eigen_range(const Eigen::MatrixXd& a, Eigen::Index first,
                                           Eigen::Index last);

// Eigenpairs of the `count` largest magnitude eigenvalues, ordered by
// magnitude descending (ties: larger value first).
SymmetricEigen dense_top_magnitude(const Eigen::MatrixXd& a, Eigen::Index count);

// Matrix-free symmetric operator: y = A x for vectors of length dim.
struct SymmetricLinearOperator {
  Eigen::Index dim = 0;
  std::function<void(const double* x, double* y)> apply;
};

enum class Which { LargestAlgebraic, LargestMagnitude };

struct LanczosOptions {
  // Krylov basis size; 0 picks max(2 * nev + 20, 40).
  Eigen::Index basis = 0;
  int max_restarts = 400;
  // Ritz residual tolerance relative to the largest Ritz value magnitude.
  double tol = 1e-11;
  std::uint64_t seed = 0x243f6a8885a308d3ULL;
  // Optional start vector (length dim); random when empty.
  Eigen::VectorXd start;
};

struct LanczosResult {
  Eigen::VectorXd values;   // ordered by `which`, best first
  Eigen::MatrixXd vectors;  // orthonormal columns
  int restarts = 0;
  long long matvecs = 0;
  bool converged = false;
};

// The `nev` wanted eigenpairs of a real symmetric operator. Small problems
// are handed to the dense solver.
LanczosResult lanczos_eigen(const SymmetricLinearOperator& op, Eigen::Index nev, Which which,
                            const LanczosOptions& options = {});

}  // namespace hermclust
