#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "hermclust/kernels/kernels.hpp"
#include "hermclust/rng.hpp"

namespace hk = hermclust::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  hermclust::RngStream rng = hermclust::CounterRng(seed).stream(0);
  std::vector<double> v(n);
  for (auto& x : v) x = 2.0 * rng.next_uniform() - 1.0;
  return v;
}

TEST(Kernels, ScalarIsAlwaysAvailable) {
  const auto backends = hk::available_backends();
  ASSERT_FALSE(backends.empty());
  EXPECT_EQ(backends.front(), hk::Backend::Scalar);
  EXPECT_EQ(hk::table_for(hk::Backend::Scalar).backend, hk::Backend::Scalar);
}

TEST(Kernels, ScalarReferenceValues) {
  const auto& s = hk::table_for(hk::Backend::Scalar);
  const double x[] = {1, 2, 3};
  double y[] = {4, 5, 6};
  EXPECT_DOUBLE_EQ(s.dot(x, y, 3), 32.0);
  EXPECT_DOUBLE_EQ(s.squared_distance(x, y, 3), 27.0);
  s.axpy(2.0, x, y, 3);
  EXPECT_DOUBLE_EQ(y[0], 6.0);
  EXPECT_DOUBLE_EQ(y[2], 12.0);
  EXPECT_DOUBLE_EQ(s.dot(x, y, 0), 0.0);
}

// Every compiled SIMD variant must agree with the scalar reference on all
// lengths, including remainders that do not fill a vector register.
TEST(Kernels, SimdMatchesScalarReference) {
  const auto& ref = hk::table_for(hk::Backend::Scalar);
  for (const hk::Backend b : hk::available_backends()) {
    const auto& t = hk::table_for(b);
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto x = random_vector(n, 11 * n + 1);
      const auto y = random_vector(n, 13 * n + 2);
      const double scale = 1.0 + static_cast<double>(n);
      EXPECT_NEAR(t.dot(x.data(), y.data(), n), ref.dot(x.data(), y.data(), n), 1e-13 * scale)
          << hk::backend_name(b) << " n=" << n;
      EXPECT_NEAR(t.squared_distance(x.data(), y.data(), n),
                  ref.squared_distance(x.data(), y.data(), n), 1e-13 * scale);
      auto ya = y;
      auto yb = y;
      t.axpy(-0.37, x.data(), ya.data(), n);
      ref.axpy(-0.37, x.data(), yb.data(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ya[i], yb[i], 1e-15);
    }
  }
}

TEST(Kernels, NearestCentroidAgreesAcrossBackends) {
  const auto& ref = hk::table_for(hk::Backend::Scalar);
  for (const hk::Backend b : hk::available_backends()) {
    const auto& t = hk::table_for(b);
    for (std::size_t d : {1u, 2u, 3u, 4u, 5u, 8u, 13u}) {
      for (std::size_t k : {1u, 2u, 7u}) {
        const auto c = random_vector(k * d, 100 * d + k);
        for (int trial = 0; trial < 20; ++trial) {
          const auto p = random_vector(d, 1000 * d + 10 * k + trial);
          double da = 0.0;
          double db = 0.0;
          const auto ia = t.nearest_centroid(p.data(), c.data(), k, d, &da);
          const auto ib = ref.nearest_centroid(p.data(), c.data(), k, d, &db);
          EXPECT_EQ(ia, ib);
          EXPECT_NEAR(da, db, 1e-13);
        }
      }
    }
  }
}

TEST(Kernels, NearestCentroidTiesGoToLowestIndex) {
  for (const hk::Backend b : hk::available_backends()) {
    const auto& t = hk::table_for(b);
    const double centroids[] = {1, 0, -1, 0, 1, 0, 0, 1};
    const double origin[] = {0, 0};
    double dist = -1.0;
    EXPECT_EQ(t.nearest_centroid(origin, centroids, 4, 2, &dist), 0u);
    EXPECT_DOUBLE_EQ(dist, 1.0);
  }
}

TEST(Kernels, ActiveTableIsOneOfTheAvailable) {
  const auto active = hk::active().backend;
  const auto all = hk::available_backends();
  EXPECT_NE(std::find(all.begin(), all.end(), active), all.end());
}

}  // namespace
