#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hermclust/kernels/kernels.hpp"

namespace hermclust::kernels {

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "unknown";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::Scalar};
#if defined(HERMCLUST_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    out.push_back(Backend::Avx2);
  }
#endif
#if defined(HERMCLUST_HAVE_NEON)
  out.push_back(Backend::Neon);
#endif
  return out;
}

const KernelTable& table_for(Backend b) {
  for (Backend a : available_backends()) {
    if (a != b) continue;
    switch (b) {
      case Backend::Scalar: return detail::scalar_table();
#if defined(HERMCLUST_HAVE_AVX2)
      case Backend::Avx2: return detail::avx2_table();
#endif
#if defined(HERMCLUST_HAVE_NEON)
      case Backend::Neon: return detail::neon_table();
#endif
      default: break;
    }
  }
  throw std::invalid_argument("kernel backend '" + std::string(backend_name(b)) +
                              "' is not available on this machine");
}

namespace {

const KernelTable& select() {
  const auto backends = available_backends();
  if (const char* forced = std::getenv("HERMCLUST_KERNELS")) {
    for (Backend b : backends) {
      if (backend_name(b) == forced) return table_for(b);
    }
  }
  // Last entry is the widest supported variant.
  return table_for(backends.back());
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace hermclust::kernels
