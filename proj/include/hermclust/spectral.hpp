#pragma once
// Hermitian eigendecomposition, eigenpair selection and the embeddings fed
// to k-means.

#include <Eigen/Dense>

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hermclust/operators.hpp"
#include "hermclust/symmetric_eigen.hpp"

namespace hermclust {

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;  // unit 2-norm
};

enum class EigBackend { Auto, Dense, Lanczos };

// Auto uses the dense solver up to this dimension.
inline constexpr Index kDenseSolverLimit = 1024;

struct EigRequest {
  // Number of eigenpairs wanted, largest |lambda| first; 0 = full spectrum
  // (dense only).
  Index count = 0;
  EigBackend backend = EigBackend::Auto;
  LanczosOptions lanczos;
};

bool uses_lanczos(EigBackend backend, Index dim, Index count);

// Eigenpairs sorted by |lambda| descending (ties: larger lambda first).
std::vector<EigenPair> eig_hermitian(const HermitianOperator& a, const EigRequest& request = {});

// Validates (max asymmetry <= 1e-10) then decomposes.
std::vector<EigenPair> eig_hermitian(const Eigen::MatrixXcd& a, const EigRequest& request = {});

// Eigenpairs of D^-1 A, obtained from D^-1/2 A D^-1/2 (same spectrum) with
// eigenvectors mapped through D^-1/2 and renormalized.
std::vector<EigenPair> eig_random_walk(const HermitianOperator& a, const DegreeVector& d,
                                       const EigRequest& request = {});

struct ThresholdRule {
  double epsilon = 0.0;
};
struct FixedRule {
  Index count = 0;
};
using SelectionRule = std::variant<ThresholdRule, FixedRule>;

// Absolute tolerance used to close +/- pairs and magnitude ties at the
// boundary of a fixed selection, scaled by max(1, |lambda_1|).
inline constexpr double kTieTolerance = 1e-9;

// Threshold keeps |lambda| > epsilon. Fixed keeps the top `count` and then
// every further pair tying the boundary magnitude. `pairs` must be sorted by
// eig_hermitian; `dim` is the operator dimension.
std::vector<EigenPair> select_pairs(std::span<const EigenPair> pairs, const SelectionRule& rule,
                                    Index dim);

// The practical rule: l = k, or k - 1 when k is odd.
Index default_pair_count(int k);

// 10 sqrt(p n log(p n)); throws when p n <= 1.
double default_epsilon(double p_hat, double n);
// 20 sqrt(p k n log n); throws when n <= 1.
double concentration_epsilon(double p, int k, double n);

struct SpectralEmbedding {
  Eigen::MatrixXd features;  // N rows
  std::string provenance;
  Index pairs_used = 0;
};

enum class ProjectionMode { Factor, Full };

// Rows of P = sum g g^* (Full), or of U with P = U U^T (Factor). Throws
// std::logic_error("unpaired spectrum") when P is not real within 1e-8.
SpectralEmbedding projection_embedding(std::span<const EigenPair> selected, Index dim,
                                       ProjectionMode mode = ProjectionMode::Factor);

// Frobenius norm of Im(sum g g^*), computed in O(N l^2).
double projection_imaginary_norm(std::span<const EigenPair> selected);

// Columns [Re g1, Im g1, Re g2, Im g2, ...]. Throws on an empty selection.
SpectralEmbedding eigvec_embedding(std::span<const EigenPair> selected);

}  // namespace hermclust
