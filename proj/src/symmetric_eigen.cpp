#include "hermclust/symmetric_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "hermclust/kernels/kernels.hpp"
#include "hermclust/rng.hpp"

namespace hermclust {
namespace {

using Eigen::Index;

SymmetricEigen run_dsyevr(const Eigen::MatrixXd& a, char jobz, char range, Index il, Index iu) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetric eigensolver needs a square matrix");
  const auto n = static_cast<lapack_int>(a.rows());
  SymmetricEigen out;
  if (n == 0) return out;
  Eigen::MatrixXd work = a;
  const lapack_int want = range == 'A' ? n : static_cast<lapack_int>(iu - il + 1);
  Eigen::VectorXd w(n);
  Eigen::MatrixXd z;
  if (jobz == 'V') z.resize(n, want);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(std::max<lapack_int>(want, 1)));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, jobz, range, 'L', n, work.data(), n, 0.0, 0.0,
      static_cast<lapack_int>(il + 1), static_cast<lapack_int>(iu + 1), LAPACKE_dlamch('S'),
      &found, w.data(), jobz == 'V' ? z.data() : nullptr, n, isuppz.data());
  if (info != 0) {
    throw std::runtime_error("LAPACK dsyevr failed with info=" + std::to_string(info));
  }
  out.values = w.head(found);
  if (jobz == 'V') out.vectors = z.leftCols(found);
  return out;
}

std::vector<Index> order_by(const Eigen::VectorXd& values, Which which) {
  std::vector<Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Index a, Index b) {
    if (which == Which::LargestAlgebraic) return values[a] > values[b];
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    return values[a] > values[b];
  });
  return idx;
}

SymmetricEigen select_columns(const SymmetricEigen& e, const std::vector<Index>& idx, Index count) {
  SymmetricEigen out;
  out.values.resize(count);
  out.vectors.resize(e.vectors.rows(), count);
  for (Index j = 0; j < count; ++j) {
    out.values[j] = e.values[idx[j]];
    out.vectors.col(j) = e.vectors.col(idx[j]);
  }
  return out;
}

}  // namespace

SymmetricEigen dense_symmetric_eigen(const Eigen::MatrixXd& a, bool with_vectors) {
  return run_dsyevr(a, with_vectors ? 'V' : 'N', 'A', 0, 0);
}

SymmetricEigen dense_symmetric_eigen_range(const Eigen::MatrixXd& a, Index first, Index last) {
  if (first < 0 || last >= a.rows() || first > last) {
    throw std::invalid_argument("eigenvalue index range out of bounds");
  }
  return run_dsyevr(a, 'V', 'I', first, last);
}

SymmetricEigen dense_top_magnitude(const Eigen::MatrixXd& a, Index count) {
  const Index n = a.rows();
  if (count < 0 || count > n) throw std::invalid_argument("requested more eigenpairs than the dimension");
  if (count == 0) return {Eigen::VectorXd(0), Eigen::MatrixXd(n, 0)};
  SymmetricEigen pool;
  if (2 * count >= n) {
    pool = dense_symmetric_eigen(a);
  } else {
    const SymmetricEigen low = dense_symmetric_eigen_range(a, 0, count - 1);
    const SymmetricEigen high = dense_symmetric_eigen_range(a, n - count, n - 1);
    pool.values.resize(2 * count);
    pool.values << low.values, high.values;
    pool.vectors.resize(n, 2 * count);
    pool.vectors << low.vectors, high.vectors;
  }
  return select_columns(pool, order_by(pool.values, Which::LargestMagnitude), count);
}

LanczosResult lanczos_eigen(const SymmetricLinearOperator& op, Index nev, Which which,
                            const LanczosOptions& options) {
  const Index n = op.dim;
  if (nev < 0 || nev > n) throw std::invalid_argument("requested more eigenpairs than the dimension");
  LanczosResult result;
  if (nev == 0) {
    result.vectors.resize(n, 0);
    result.converged = true;
    return result;
  }
  Index m = options.basis > 0 ? options.basis : std::max<Index>(2 * nev + 20, 40);
  m = std::min(m, n);

  if (n <= 256 || n <= 3 * m) {
    Eigen::MatrixXd dense(n, n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (Index j = 0; j < n; ++j) {
      e[j] = 1.0;
      op.apply(e.data(), dense.col(j).data());
      e[j] = 0.0;
    }
    dense = 0.5 * (dense + dense.transpose()).eval();
    const SymmetricEigen full = dense_symmetric_eigen(dense);
    const SymmetricEigen top = select_columns(full, order_by(full.values, which), nev);
    result.values = top.values;
    result.vectors = top.vectors;
    result.matvecs = n;
    result.converged = true;
    return result;
  }

  const auto& k = kernels::active();
  const auto un = static_cast<std::size_t>(n);
  Eigen::MatrixXd v(n, m + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd w(n);
  RngStream rng = CounterRng(options.seed).stream(0);

  const auto orthogonalize = [&](Index upto, double* coeffs) {
    // Two passes of modified Gram-Schmidt against columns [0, upto].
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i <= upto; ++i) {
        const double c = k.dot(v.col(i).data(), w.data(), un);
        if (coeffs != nullptr) coeffs[i] += c;
        k.axpy(-c, v.col(i).data(), w.data(), un);
      }
    }
  };
  const auto random_fill = [&]() {
    for (Index i = 0; i < n; ++i) w[i] = rng.next_uniform() - 0.5;
  };

  if (options.start.size() == n && options.start.norm() > 0.0) {
    v.col(0) = options.start.normalized();
  } else {
    random_fill();
    v.col(0) = w.normalized();
  }

  Index kept = 0;
  double last_beta = 0.0;
  std::vector<double> coeffs(static_cast<std::size_t>(m + 1));
  for (int restart = 0;; ++restart) {
    for (Index j = kept; j < m; ++j) {
      op.apply(v.col(j).data(), w.data());
      ++result.matvecs;
      std::fill(coeffs.begin(), coeffs.end(), 0.0);
      orthogonalize(j, coeffs.data());
      for (Index i = 0; i <= j; ++i) {
        h(i, j) = coeffs[i];
        h(j, i) = coeffs[i];
      }
      double beta = w.norm();
      const double scale = std::max(1.0, std::abs(h(j, j)));
      if (beta <= 1e-13 * scale) {
        // Invariant subspace: continue with a fresh orthogonal direction.
        random_fill();
        orthogonalize(j, nullptr);
        w.normalize();
        beta = 0.0;
        v.col(j + 1) = w;
      } else {
        v.col(j + 1) = w / beta;
      }
      last_beta = beta;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(h);
    const Eigen::VectorXd theta = ritz.eigenvalues();
    const Eigen::MatrixXd& y = ritz.eigenvectors();
    const std::vector<Index> idx = order_by(theta, which);
    const double spread = theta.cwiseAbs().maxCoeff();
    bool converged = true;
    for (Index i = 0; i < nev; ++i) {
      const double residual = std::abs(last_beta * y(m - 1, idx[i]));
      if (residual > options.tol * std::max(spread, 1e-300)) {
        converged = false;
        break;
      }
    }
    if (converged || restart >= options.max_restarts || m == n) {
      result.values.resize(nev);
      Eigen::MatrixXd yw(m, nev);
      for (Index i = 0; i < nev; ++i) {
        result.values[i] = theta[idx[i]];
        yw.col(i) = y.col(idx[i]);
      }
      result.vectors = v.leftCols(m) * yw;
      // Restore exact orthonormality lost to rounding in the restarts.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(result.vectors);
      Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, nev);
      for (Index i = 0; i < nev; ++i) {
        if (q.col(i).dot(result.vectors.col(i)) < 0.0) q.col(i) = -q.col(i);
      }
      result.vectors = q;
      result.restarts = restart;
      result.converged = converged || m == n;
      return result;
    }

    const Index keep = std::min<Index>(nev + (m - nev) / 2, m - 1);
    Eigen::MatrixXd yk(m, keep);
    for (Index i = 0; i < keep; ++i) yk.col(i) = y.col(idx[i]);
    const Eigen::MatrixXd ritz_vectors = v.leftCols(m) * yk;
    const Eigen::VectorXd residual_direction = v.col(m);
    v.leftCols(keep) = ritz_vectors;
    v.col(keep) = residual_direction;
    h.setZero();
    for (Index i = 0; i < keep; ++i) h(i, i) = theta[idx[i]];
    kept = keep;
  }
}

}  // namespace hermclust
