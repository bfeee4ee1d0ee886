#include "hermclust/kernels/kernels.hpp"

#include <limits>

namespace hermclust::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double squared_distance_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x[i] - y[i];
    s += t * t;
  }
  return s;
}

std::size_t nearest_centroid_scalar(const double* point, const double* centroids,
                                    std::size_t k, std::size_t d,
                                    double* best_distance) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < k; ++c) {
    const double dist = squared_distance_scalar(point, centroids + c * d, d);
    if (dist < best_d) {
      best_d = dist;
      best = c;
    }
  }
  if (best_distance != nullptr) *best_distance = best_d;
  return best;
}

}  // namespace

namespace detail {
const KernelTable& scalar_table() {
  static const KernelTable table{Backend::Scalar, &dot_scalar, &axpy_scalar,
                                 &squared_distance_scalar, &nearest_centroid_scalar};
  return table;
}
}  // namespace detail

}  // namespace hermclust::kernels
