#pragma once
// Data-parallel inner loops used by k-means and the Lanczos solver.
//
// Each kernel has a scalar reference implementation and optional SIMD
// variants (AVX2+FMA on x86-64, NEON on AArch64). The variant is chosen once
// at runtime from the CPU features; HERMCLUST_KERNELS=scalar|avx2|neon in the
// environment forces a specific backend when it is available.

#include <cstddef>
#include <string_view>
#include <vector>

namespace hermclust::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view backend_name(Backend b);

struct KernelTable {
  Backend backend;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  double (*squared_distance)(const double* x, const double* y, std::size_t n);
  // Index of the nearest of `k` centroids stored row-major (k x d) and the
  // squared distance to it. Ties go to the lowest index.
  std::size_t (*nearest_centroid)(const double* point, const double* centroids,
                                  std::size_t k, std::size_t d,
                                  double* best_distance);
};

// Backends compiled into this binary and supported by the running CPU.
std::vector<Backend> available_backends();

// Table for one backend; throws std::invalid_argument when unavailable.
const KernelTable& table_for(Backend b);

// The dispatched table (selected once, thread-safe).
const KernelTable& active();

inline double dot(const double* x, const double* y, std::size_t n) {
  return active().dot(x, y, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) {
  active().axpy(a, x, y, n);
}
inline double squared_distance(const double* x, const double* y, std::size_t n) {
  return active().squared_distance(x, y, n);
}
inline std::size_t nearest_centroid(const double* point, const double* centroids,
                                    std::size_t k, std::size_t d,
                                    double* best_distance) {
  return active().nearest_centroid(point, centroids, k, d, best_distance);
}

namespace detail {
const KernelTable& scalar_table();
#if defined(HERMCLUST_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(HERMCLUST_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace hermclust::kernels
