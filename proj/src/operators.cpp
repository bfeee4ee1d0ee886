#include "hermclust/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hermclust {
namespace {

using SparseComplex = Eigen::SparseMatrix<std::complex<double>, Eigen::RowMajor>;

double coeff(const RealPart& p, Index r, Index c) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroPart>) {
          return 0.0;
        } else {
          return m.coeff(r, c);
        }
      },
      p);
}

Eigen::MatrixXd dense_of(const RealPart& p, Index dim) {
  return std::visit(
      [&](const auto& m) -> Eigen::MatrixXd {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroPart>) {
          return Eigen::MatrixXd::Zero(dim, dim);
        } else {
          return Eigen::MatrixXd(m);
        }
      },
      p);
}

SparseMatrix sparse_of(const RealPart& p, Index dim) {
  return std::visit(
      [&](const auto& m) -> SparseMatrix {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroPart>) {
          return SparseMatrix(dim, dim);
        } else if constexpr (std::is_same_v<T, SparseMatrix>) {
          return m;
        } else {
          return m.sparseView();
        }
      },
      p);
}

// y (+)= P x
void multiply_add(const RealPart& p, const Eigen::Ref<const Eigen::VectorXd>& x,
                  Eigen::Ref<Eigen::VectorXd> y, double sign) {
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (!std::is_same_v<T, ZeroPart>) {
          y.noalias() += sign * (m * x);
        }
      },
      p);
}

RealPart scale_part(const RealPart& p, const Eigen::VectorXd& left, const Eigen::VectorXd& right) {
  return std::visit(
      [&](const auto& m) -> RealPart {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroPart>) {
          return ZeroPart{};
        } else if constexpr (std::is_same_v<T, SparseMatrix>) {
          SparseMatrix s = left.asDiagonal() * m * right.asDiagonal();
          s.prune(0.0);
          return s;
        } else {
          return Eigen::MatrixXd(left.asDiagonal() * m * right.asDiagonal());
        }
      },
      p);
}

Index part_dim(const RealPart& p, Index fallback) {
  return std::visit(
      [&](const auto& m) -> Index {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroPart>) {
          return fallback;
        } else {
          if (m.rows() != m.cols()) throw std::invalid_argument("operator parts must be square");
          return m.rows();
        }
      },
      p);
}

// max |P - sign * P^T|
double symmetry_defect(const RealPart& p, double sign) {
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, ZeroPart>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, SparseMatrix>) {
          const SparseMatrix t = m.transpose();
          const SparseMatrix d = m - sign * t;
          double worst = 0.0;
          for (Index k = 0; k < d.outerSize(); ++k) {
            for (SparseMatrix::InnerIterator it(d, k); it; ++it) {
              worst = std::max(worst, std::abs(it.value()));
            }
          }
          return worst;
        } else {
          if (m.size() == 0) return 0.0;
          return (m - sign * m.transpose()).cwiseAbs().maxCoeff();
        }
      },
      p);
}

bool storage_is_dense(const RealPart& p) { return std::holds_alternative<Eigen::MatrixXd>(p); }

RealPart convert(const RealPart& p, Index dim, bool dense) {
  if (std::holds_alternative<ZeroPart>(p)) return ZeroPart{};
  if (dense) return dense_of(p, dim);
  return sparse_of(p, dim);
}

}  // namespace

ComplexOperator::ComplexOperator(Index dim, RealPart re, RealPart im)
    : dim_(dim), re_(std::move(re)), im_(std::move(im)) {
  if (part_dim(re_, dim_) != dim_ || part_dim(im_, dim_) != dim_) {
    throw std::invalid_argument("operator part dimensions do not match");
  }
}

bool ComplexOperator::is_dense() const {
  return storage_is_dense(re_) || storage_is_dense(im_) ||
         (real_is_zero() && std::holds_alternative<ZeroPart>(im_) && dim_ <= kDenseStorageLimit);
}

std::complex<double> ComplexOperator::entry(Index r, Index c) const {
  return {coeff(re_, r, c), coeff(im_, r, c)};
}

Eigen::MatrixXcd ComplexOperator::to_dense() const {
  Eigen::MatrixXcd out(dim_, dim_);
  out.real() = dense_of(re_, dim_);
  out.imag() = dense_of(im_, dim_);
  return out;
}

Eigen::VectorXcd ComplexOperator::apply(const Eigen::VectorXcd& x) const {
  if (x.size() != dim_) throw std::invalid_argument("vector length does not match operator");
  const Eigen::VectorXd xr = x.real();
  const Eigen::VectorXd xi = x.imag();
  Eigen::VectorXd yr = Eigen::VectorXd::Zero(dim_);
  Eigen::VectorXd yi = Eigen::VectorXd::Zero(dim_);
  multiply_add(re_, xr, yr, 1.0);
  multiply_add(im_, xi, yr, -1.0);
  multiply_add(im_, xr, yi, 1.0);
  multiply_add(re_, xi, yi, 1.0);
  Eigen::VectorXcd y(dim_);
  y.real() = yr;
  y.imag() = yi;
  return y;
}

HermitianOperator HermitianOperator::from_parts(Index dim, RealPart re, RealPart im,
                                                double tol) {
  HermitianOperator h;
  static_cast<ComplexOperator&>(h) = ComplexOperator(dim, std::move(re), std::move(im));
  const double defect = std::max(symmetry_defect(h.re_, 1.0), symmetry_defect(h.im_, -1.0));
  if (defect > tol) {
    throw std::invalid_argument("operator is not Hermitian (max asymmetry " +
                                std::to_string(defect) + ")");
  }
  return h;
}

HermitianOperator HermitianOperator::from_dense(const Eigen::MatrixXcd& m, double tol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("Hermitian operator must be square");
  RealPart re = ZeroPart{};
  if (m.size() > 0 && m.real().cwiseAbs().maxCoeff() > 0.0) re = Eigen::MatrixXd(m.real());
  return from_parts(m.rows(), std::move(re), Eigen::MatrixXd(m.imag()), tol);
}

HermitianOperator HermitianOperator::with_storage(Storage s) const {
  const bool dense = s == Storage::Dense || (s == Storage::Auto && dim_ <= kDenseStorageLimit);
  HermitianOperator h;
  static_cast<ComplexOperator&>(h) =
      ComplexOperator(dim_, convert(re_, dim_, dense), convert(im_, dim_, dense));
  return h;
}

void HermitianOperator::apply_realified(const double* x, double* y) const {
  Eigen::Map<const Eigen::VectorXd> xr(x, dim_);
  Eigen::Map<const Eigen::VectorXd> xi(x + dim_, dim_);
  Eigen::Map<Eigen::VectorXd> yr(y, dim_);
  Eigen::Map<Eigen::VectorXd> yi(y + dim_, dim_);
  yr.setZero();
  yi.setZero();
  multiply_add(re_, xr, yr, 1.0);
  multiply_add(im_, xi, yr, -1.0);
  multiply_add(im_, xr, yi, 1.0);
  multiply_add(re_, xi, yi, 1.0);
}

Eigen::MatrixXd HermitianOperator::realified_dense() const {
  const Eigen::MatrixXd re = dense_of(re_, dim_);
  const Eigen::MatrixXd im = dense_of(im_, dim_);
  Eigen::MatrixXd r(2 * dim_, 2 * dim_);
  r.topLeftCorner(dim_, dim_) = re;
  r.topRightCorner(dim_, dim_) = -im;
  r.bottomLeftCorner(dim_, dim_) = im;
  r.bottomRightCorner(dim_, dim_) = re;
  return r;
}

double HermitianOperator::norm_bound() const {
  if (dim_ == 0) return 0.0;
  return absolute_degrees(*this).values.maxCoeff();
}

double hermitian_defect(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator build_hermitian(const Digraph& g, Storage storage) {
  const Index n = g.num_vertices();
  const bool dense = storage == Storage::Dense || (storage == Storage::Auto && n <= kDenseStorageLimit);
  const SparseMatrix m = g.adjacency();
  SparseMatrix skew = m - SparseMatrix(m.transpose());
  skew.prune(0.0);
  RealPart im;
  if (dense) {
    im = Eigen::MatrixXd(skew);
  } else {
    im = std::move(skew);
  }
  return HermitianOperator::from_parts(n, ZeroPart{}, std::move(im), 0.0);
}

DegreeVector absolute_degrees(const ComplexOperator& a) {
  const Index n = a.dim();
  DegreeVector d{Eigen::VectorXd::Zero(n)};
  const auto row_abs_sum = [&](const RealPart& p) {
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, SparseMatrix>) {
            for (Index r = 0; r < m.outerSize(); ++r) {
              for (SparseMatrix::InnerIterator it(m, r); it; ++it) d.values[r] += std::abs(it.value());
            }
          } else if constexpr (std::is_same_v<T, Eigen::MatrixXd>) {
            // Column order matches the sparse traversal, so both storages
            // give bitwise-identical degrees.
            for (Index r = 0; r < m.rows(); ++r) {
              for (Index c = 0; c < m.cols(); ++c) {
                if (m(r, c) != 0.0) d.values[r] += std::abs(m(r, c));
              }
            }
          }
        },
        p);
  };
  if (a.real_is_zero()) {
    row_abs_sum(a.imag_part());
  } else if (std::holds_alternative<ZeroPart>(a.imag_part())) {
    row_abs_sum(a.real_part());
  } else if (a.is_dense()) {
    d.values = a.to_dense().cwiseAbs().rowwise().sum();
  } else {
    const SparseMatrix re = sparse_of(a.real_part(), n);
    const SparseMatrix im = sparse_of(a.imag_part(), n);
    SparseComplex c = re.cast<std::complex<double>>() +
                      std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
    for (Index r = 0; r < c.outerSize(); ++r) {
      for (SparseComplex::InnerIterator it(c, r); it; ++it) d.values[r] += std::abs(it.value());
    }
  }
  return d;
}

Eigen::VectorXd safe_inverse_power(const Eigen::VectorXd& d, double power) {
  Eigen::VectorXd out(d.size());
  for (Index i = 0; i < d.size(); ++i) out[i] = d[i] > 0.0 ? std::pow(d[i], -power) : 0.0;
  return out;
}

ComplexOperator normalize_rw(const ComplexOperator& a, const DegreeVector& d) {
  if (d.values.size() != a.dim()) throw std::invalid_argument("degree vector length mismatch");
  const Eigen::VectorXd inv = safe_inverse_power(d.values, 1.0);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(a.dim());
  return ComplexOperator(a.dim(), scale_part(a.real_part(), inv, ones),
                         scale_part(a.imag_part(), inv, ones));
}

HermitianOperator normalize_sym(const HermitianOperator& a, const DegreeVector& d) {
  if (d.values.size() != a.dim()) throw std::invalid_argument("degree vector length mismatch");
  const Eigen::VectorXd s = safe_inverse_power(d.values, 0.5);
  // Symmetric scaling preserves the Hermitian structure exactly.
  return HermitianOperator::from_parts(a.dim(), scale_part(a.real_part(), s, s),
                                       scale_part(a.imag_part(), s, s), 1e-12);
}

}  // namespace hermclust
