#pragma once
// Complex operators built from digraphs.
//
// A complex matrix is stored as separate real and imaginary parts, each
// either dense, sparse, or identically zero. This keeps the purely imaginary
// Hermitian adjacency cheap and makes the real 2N x 2N realification
// [[Re, -Im], [Im, Re]] available without a complex eigensolver.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <variant>

#include "hermclust/graph.hpp"

namespace hermclust {

using Index = Eigen::Index;

enum class Storage { Auto, Dense, Sparse };

// Dimension above which Storage::Auto chooses sparse storage.
inline constexpr Index kDenseStorageLimit = 4096;

struct ZeroPart {};
using RealPart = std::variant<ZeroPart, Eigen::MatrixXd, SparseMatrix>;

// General square complex matrix (no symmetry assumed).
class ComplexOperator {
 public:
  ComplexOperator() = default;
  ComplexOperator(Index dim, RealPart re, RealPart im);

  Index dim() const { return dim_; }
  bool is_dense() const;
  bool real_is_zero() const { return std::holds_alternative<ZeroPart>(re_); }
  const RealPart& real_part() const { return re_; }
  const RealPart& imag_part() const { return im_; }

  std::complex<double> entry(Index r, Index c) const;
  Eigen::MatrixXcd to_dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;

 protected:
  Index dim_ = 0;
  RealPart re_;
  RealPart im_;
};

// Complex Hermitian matrix: entry(u, v) == conj(entry(v, u)).
class HermitianOperator : public ComplexOperator {
 public:
  HermitianOperator() = default;

  // Validates the Hermitian property to within `tol` (max-abs entry of the
  // asymmetry); throws std::invalid_argument otherwise.
  static HermitianOperator from_parts(Index dim, RealPart re, RealPart im,
                                      double tol = 1e-10);
  static HermitianOperator from_dense(const Eigen::MatrixXcd& m, double tol = 1e-10);

  bool is_purely_imaginary() const { return real_is_zero(); }

  HermitianOperator with_storage(Storage s) const;

  // y = R x for the realification R = [[Re, -Im], [Im, Re]]; x and y have
  // length 2 * dim.
  void apply_realified(const double* x, double* y) const;
  Eigen::MatrixXd realified_dense() const;

  // Max absolute row sum (infinity norm), an upper bound on the spectral norm.
  double norm_bound() const;
};

// Largest |entry(u, v) - conj(entry(v, u))|.
double hermitian_defect(const Eigen::MatrixXcd& m);

struct DegreeVector {
  Eigen::VectorXd values;
};

// A(u, v) = (w(u -> v) - w(v -> u)) i.
HermitianOperator build_hermitian(const Digraph& g, Storage storage = Storage::Auto);

// D(j) = sum_l |A(j, l)|.
DegreeVector absolute_degrees(const ComplexOperator& a);

// D^-1 A; rows with zero degree stay zero.
ComplexOperator normalize_rw(const ComplexOperator& a, const DegreeVector& d);

// D^-1/2 A D^-1/2; zero-degree rows and columns stay zero.
HermitianOperator normalize_sym(const HermitianOperator& a, const DegreeVector& d);

// d^-p with 0 for d == 0.
Eigen::VectorXd safe_inverse_power(const Eigen::VectorXd& d, double power);

}  // namespace hermclust
