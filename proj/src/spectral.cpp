#include "hermclust/spectral.hpp"

#include "hermclust/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hermclust {
namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

void sort_pairs(std::vector<EigenPair>& pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const EigenPair& a, const EigenPair& b) {
    const double ma = std::abs(a.value);
    const double mb = std::abs(b.value);
    if (ma != mb) return ma > mb;
    return a.value > b.value;
  });
  // Magnitudes equal up to rounding (the +/- halves of a pair) are ordered
  // positive first so the order does not depend on the last bits.
  if (pairs.empty()) return;
  const double tol = 1e-12 * std::max(1.0, std::abs(pairs.front().value));
  std::size_t begin = 0;
  while (begin < pairs.size()) {
    std::size_t end = begin + 1;
    const double m = std::abs(pairs[begin].value);
    while (end < pairs.size() && m - std::abs(pairs[end].value) <= tol) ++end;
    std::stable_sort(pairs.begin() + static_cast<std::ptrdiff_t>(begin),
                     pairs.begin() + static_cast<std::ptrdiff_t>(end),
                     [](const EigenPair& a, const EigenPair& b) { return a.value > b.value; });
    begin = end;
  }
}

// Complex eigenpairs from eigenpairs of the realification. Every eigenvalue
// of A appears twice there (g and i g); eigenvectors [x; y] are grouped by
// eigenvalue and the complex vectors x + i y of a group are reduced to an
// orthonormal basis through their Gram matrix.
std::vector<EigenPair> recover_complex(const VectorXd& values, const MatrixXd& vectors, Index n,
                                       const HermitianOperator& a) {
  std::vector<EigenPair> out;
  const Index s = values.size();
  if (s == 0) return out;
  std::vector<Index> order(static_cast<std::size_t>(s));
  for (Index i = 0; i < s; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Index x, Index y) { return values[x] < values[y]; });
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  const double group_tol = 1e-10 * scale;

  Index begin = 0;
  while (begin < s) {
    Index end = begin + 1;
    while (end < s && values[order[end]] - values[order[end - 1]] <= group_tol) ++end;
    const Index g = end - begin;
    MatrixXcd z(n, g);
    double mean = 0.0;
    for (Index j = 0; j < g; ++j) {
      const Index c = order[begin + j];
      z.col(j).real() = vectors.col(c).head(n);
      z.col(j).imag() = vectors.col(c).tail(n);
      mean += values[c];
    }
    mean /= static_cast<double>(g);
    const MatrixXcd gram = z.adjoint() * z;
    Eigen::SelfAdjointEigenSolver<MatrixXcd> ge(gram);
    std::vector<VectorXcd> basis;
    for (Index j = g - 1; j >= 0; --j) {
      const double mu = ge.eigenvalues()[j];
      if (mu <= 0.5) break;
      basis.push_back(z * ge.eigenvectors().col(j) / std::sqrt(mu));
    }
    if (basis.size() == 1 || g <= 2) {
      for (auto& b : basis) out.push_back({mean, b.normalized()});
    } else {
      // Larger groups may merge nearby eigenvalues; separate them with a
      // Rayleigh-Ritz step on the recovered subspace.
      MatrixXcd q(n, static_cast<Index>(basis.size()));
      for (Index j = 0; j < q.cols(); ++j) q.col(j) = basis[j];
      Eigen::HouseholderQR<MatrixXcd> qr(q);
      q = qr.householderQ() * MatrixXcd::Identity(n, q.cols());
      MatrixXcd aq(n, q.cols());
      for (Index j = 0; j < q.cols(); ++j) aq.col(j) = a.apply(q.col(j));
      MatrixXcd small = q.adjoint() * aq;
      small = (0.5 * (small + small.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<MatrixXcd> se(small);
      for (Index j = 0; j < q.cols(); ++j) {
        out.push_back({se.eigenvalues()[j], (q * se.eigenvectors().col(j)).normalized()});
      }
    }
    begin = end;
  }
  return out;
}

SymmetricLinearOperator realified_operator(const HermitianOperator& a) {
  return {2 * a.dim(), [&a](const double* x, double* y) { a.apply_realified(x, y); }};
}

// Largest positive eigenvalues of a purely imaginary A and their conjugate
// partners. Returns false when the request reaches the kernel of A, where
// conjugation does not produce new pairs.
bool top_from_positive_half(const HermitianOperator& a, Index count, bool lanczos,
                            const LanczosOptions& lopts, std::vector<EigenPair>& out) {
  const Index n = a.dim();
  const Index half = (count + 1) / 2 + 1;
  if (2 * half >= n) return false;
  std::vector<EigenPair> positive;
  for (Index want = half; want <= n; want *= 2) {
    std::vector<EigenPair> recovered;
    if (lanczos) {
      LanczosOptions o = lopts;
      if (o.start.size() != 2 * n) {
        // [x; 0] keeps a single copy of each eigenvalue in the Krylov space.
        o.start = VectorXd::Zero(2 * n);
        RngStream rng = CounterRng(o.seed).stream(1);
        for (Index i = 0; i < n; ++i) o.start[i] = rng.next_uniform() - 0.5;
      }
      const LanczosResult r =
          lanczos_eigen(realified_operator(a), std::min(want + 2, 2 * n), Which::LargestAlgebraic, o);
      recovered = recover_complex(r.values, r.vectors, n, a);
    } else {
      const Index real_count = std::min(2 * want, 2 * n);
      const SymmetricEigen e =
          dense_symmetric_eigen_range(a.realified_dense(), 2 * n - real_count, 2 * n - 1);
      recovered = recover_complex(e.values, e.vectors, n, a);
    }
    sort_pairs(recovered);
    const double scale = recovered.empty() ? 0.0 : std::abs(recovered.front().value);
    positive.clear();
    for (auto& p : recovered) {
      if (p.value > 1e-10 * std::max(scale, 1e-300)) positive.push_back(std::move(p));
    }
    // Keep the largest `half` positives; a request that ran into values at or
    // below zero cannot be completed from the positive half.
    if (static_cast<Index>(positive.size()) >= half) {
      positive.resize(static_cast<std::size_t>(half));
      break;
    }
    if (static_cast<Index>(recovered.size()) > static_cast<Index>(positive.size())) return false;
    if (2 * want >= n) return false;
  }
  if (static_cast<Index>(positive.size()) < half) return false;
  out.clear();
  for (const auto& p : positive) {
    out.push_back(p);
    out.push_back({-p.value, p.vector.conjugate()});
  }
  sort_pairs(out);
  out.resize(static_cast<std::size_t>(std::min<Index>(count, static_cast<Index>(out.size()))));
  return true;
}

}  // namespace

bool uses_lanczos(EigBackend backend, Index dim, Index count) {
  if (backend == EigBackend::Dense) return false;
  if (backend == EigBackend::Lanczos) return count > 0 && count < dim;
  return dim > kDenseSolverLimit && count > 0 && count < dim;
}

std::vector<EigenPair> eig_hermitian(const HermitianOperator& a, const EigRequest& request) {
  const Index n = a.dim();
  if (request.count < 0) throw std::invalid_argument("eigenpair count must be nonnegative");
  const Index count = request.count == 0 ? n : std::min(request.count, n);
  std::vector<EigenPair> out;
  if (n == 0) return out;
  const bool lanczos = uses_lanczos(request.backend, n, count);

  if (a.is_purely_imaginary() && count < n &&
      top_from_positive_half(a, count, lanczos, request.lanczos, out)) {
    return out;
  }
  if (lanczos) {
    for (Index want = count + 4; ; want *= 2) {
      const Index nev = std::min(want, 2 * n);
      const LanczosResult r =
          lanczos_eigen(realified_operator(a), nev, Which::LargestMagnitude, request.lanczos);
      out = recover_complex(r.values, r.vectors, n, a);
      sort_pairs(out);
      if (static_cast<Index>(out.size()) > count || nev == 2 * n) break;
    }
  } else {
    const SymmetricEigen e = dense_symmetric_eigen(a.realified_dense());
    out = recover_complex(e.values, e.vectors, n, a);
    sort_pairs(out);
  }
  out.resize(static_cast<std::size_t>(std::min<Index>(count, static_cast<Index>(out.size()))));
  return out;
}

std::vector<EigenPair> eig_hermitian(const MatrixXcd& a, const EigRequest& request) {
  return eig_hermitian(HermitianOperator::from_dense(a, 1e-10), request);
}

std::vector<EigenPair> eig_random_walk(const HermitianOperator& a, const DegreeVector& d,
                                       const EigRequest& request) {
  const HermitianOperator sym = normalize_sym(a, d);
  std::vector<EigenPair> pairs = eig_hermitian(sym, request);
  const VectorXd s = safe_inverse_power(d.values, 0.5);
  for (auto& p : pairs) {
    VectorXcd mapped = s.cast<std::complex<double>>().cwiseProduct(p.vector);
    const double norm = mapped.norm();
    // Vectors supported on isolated vertices are already eigenvectors of D^-1 A.
    if (norm > 1e-12) p.vector = mapped / norm;
  }
  return pairs;
}

std::vector<EigenPair> select_pairs(std::span<const EigenPair> pairs, const SelectionRule& rule,
                                    Index dim) {
  std::vector<EigenPair> out;
  if (const auto* t = std::get_if<ThresholdRule>(&rule)) {
    for (const auto& p : pairs) {
      if (std::abs(p.value) > t->epsilon) out.push_back(p);
    }
    return out;
  }
  const Index want = std::get<FixedRule>(rule).count;
  if (want < 0 || want > dim) {
    throw std::invalid_argument("fixed selection of " + std::to_string(want) +
                                " eigenpairs exceeds the dimension " + std::to_string(dim));
  }
  if (want == 0) return out;
  if (want > static_cast<Index>(pairs.size())) {
    throw std::invalid_argument("fixed selection needs at least " + std::to_string(want) +
                                " computed eigenpairs, got " + std::to_string(pairs.size()));
  }
  const double tol = kTieTolerance * std::max(1.0, std::abs(pairs.front().value));
  const double boundary = std::abs(pairs[static_cast<std::size_t>(want - 1)].value);
  Index take = want;
  while (take < static_cast<Index>(pairs.size()) &&
         std::abs(std::abs(pairs[static_cast<std::size_t>(take)].value) - boundary) <= tol) {
    ++take;
  }
  out.assign(pairs.begin(), pairs.begin() + take);
  return out;
}

Index default_pair_count(int k) {
  if (k < 1) throw std::invalid_argument("cluster count must be positive");
  return k % 2 == 1 ? k - 1 : k;
}

double default_epsilon(double p_hat, double n) {
  const double pn = p_hat * n;
  if (!(pn > 1.0)) throw std::invalid_argument("default epsilon needs p*n > 1 (log(p*n) must be positive)");
  return 10.0 * std::sqrt(pn * std::log(pn));
}

double concentration_epsilon(double p, int k, double n) {
  if (!(n > 1.0)) throw std::invalid_argument("epsilon needs n > 1");
  if (p < 0.0 || k < 1) throw std::invalid_argument("epsilon needs p >= 0 and k >= 1");
  return 20.0 * std::sqrt(p * k * n * std::log(n));
}

double projection_imaginary_norm(std::span<const EigenPair> selected) {
  if (selected.empty()) return 0.0;
  const Index n = selected.front().vector.size();
  const auto l = static_cast<Index>(selected.size());
  MatrixXd re(n, l);
  MatrixXd im(n, l);
  for (Index j = 0; j < l; ++j) {
    re.col(j) = selected[j].vector.real();
    im.col(j) = selected[j].vector.imag();
  }
  // Im P = I R^T - R I^T = X Y^T with X = [I, -R], Y = [R, I]. With the thin
  // QR Y = Q T, ||X Y^T||_F = ||X T^T||_F, which avoids the cancellation of a
  // Gram-trace formula.
  MatrixXd x(n, 2 * l);
  MatrixXd y(n, 2 * l);
  x << im, -re;
  y << re, im;
  Eigen::HouseholderQR<MatrixXd> qr(y);
  const Index r = std::min(n, 2 * l);
  const MatrixXd t = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  return (x * t.transpose()).norm();
}

SpectralEmbedding projection_embedding(std::span<const EigenPair> selected, Index dim,
                                       ProjectionMode mode) {
  SpectralEmbedding emb;
  emb.provenance = mode == ProjectionMode::Factor ? "projection/factor" : "projection/full";
  emb.pairs_used = static_cast<Index>(selected.size());
  if (selected.empty()) {
    emb.features = mode == ProjectionMode::Factor ? MatrixXd::Zero(dim, 1) : MatrixXd::Zero(dim, dim);
    return emb;
  }
  if (projection_imaginary_norm(selected) > 1e-8) {
    throw std::logic_error("unpaired spectrum: the selected eigenvectors do not span a real projection");
  }
  const Index n = selected.front().vector.size();
  const auto l = static_cast<Index>(selected.size());
  // P = Re(G G^*) = W W^T with W = [Re G, Im G]; compress W to an orthonormal
  // N x l factor through its Gram matrix.
  MatrixXd w(n, 2 * l);
  for (Index j = 0; j < l; ++j) {
    w.col(j) = selected[j].vector.real();
    w.col(l + j) = selected[j].vector.imag();
  }
  Eigen::SelfAdjointEigenSolver<MatrixXd> ge(w.transpose() * w);
  std::vector<Index> keep;
  for (Index j = 2 * l - 1; j >= 0; --j) {
    if (ge.eigenvalues()[j] > 0.5) keep.push_back(j);
  }
  MatrixXd u(n, static_cast<Index>(keep.size()));
  for (Index j = 0; j < u.cols(); ++j) {
    u.col(j) = w * ge.eigenvectors().col(keep[j]) / std::sqrt(ge.eigenvalues()[keep[j]]);
  }
  emb.features = mode == ProjectionMode::Factor ? u : MatrixXd(u * u.transpose());
  return emb;
}

SpectralEmbedding eigvec_embedding(std::span<const EigenPair> selected) {
  if (selected.empty()) throw std::invalid_argument("eigenvector embedding needs at least one eigenpair");
  const Index n = selected.front().vector.size();
  const auto l = static_cast<Index>(selected.size());
  SpectralEmbedding emb;
  emb.provenance = "eigvec";
  emb.pairs_used = l;
  emb.features.resize(n, 2 * l);
  for (Index j = 0; j < l; ++j) {
    emb.features.col(2 * j) = selected[j].vector.real();
    emb.features.col(2 * j + 1) = selected[j].vector.imag();
  }
  return emb;
}

}  // namespace hermclust
