#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <random>
#include <vector>

#include "fracsob/simd.hpp"

namespace {

using fracsob::simd::KernelTable;
using cd = std::complex<double>;

std::vector<double> random_reals(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(gen);
  return v;
}

std::vector<cd> random_complex(std::size_t n, unsigned seed) {
  const auto re = random_reals(n, seed), im = random_reals(n, seed + 1);
  std::vector<cd> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], im[i]};
  return v;
}

class SimdEquivalence : public ::testing::TestWithParam<std::size_t> {
 protected:
  void SetUp() override {
    wide_ = fracsob::simd::avx2_kernels();
    if (wide_ == nullptr) GTEST_SKIP() << "AVX2 variant unavailable on this CPU";
  }
  const KernelTable& ref() const { return fracsob::simd::scalar_kernels(); }
  const KernelTable* wide_ = nullptr;
};

// Sizes cover empty input, sub-vector tails and multiples of the vector width.
INSTANTIATE_TEST_SUITE_P(Sizes, SimdEquivalence,
                         ::testing::Values(0, 1, 3, 4, 5, 7, 8, 16, 17, 255, 1024, 4099));

TEST_P(SimdEquivalence, Reductions) {
  const std::size_t n = GetParam();
  const auto x = random_reals(n, 1), y = random_reals(n, 2);
  const double scale = 1e-13 * static_cast<double>(n + 1);
  EXPECT_NEAR(wide_->sum(x.data(), n), ref().sum(x.data(), n), scale);
  EXPECT_NEAR(wide_->dot(x.data(), y.data(), n), ref().dot(x.data(), y.data(), n), scale);
  EXPECT_NEAR(wide_->squared_distance(x.data(), y.data(), n),
              ref().squared_distance(x.data(), y.data(), n), scale);
  const auto z = random_complex(n, 3);
  const auto w = random_reals(n, 5);
  EXPECT_NEAR(wide_->weighted_power(z.data(), w.data(), n),
              ref().weighted_power(z.data(), w.data(), n), scale);
}

TEST_P(SimdEquivalence, ElementwiseComplex) {
  const std::size_t n = GetParam();
  auto a = random_complex(n, 7), b = a;
  const auto m = random_complex(n, 9);
  const auto r = random_reals(n, 11);
  ref().multiply_complex(a.data(), m.data(), n);
  wide_->multiply_complex(b.data(), m.data(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-14) << i;
  ref().scale_complex(a.data(), r.data(), n);
  wide_->scale_complex(b.data(), r.data(), n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-14) << i;
}

TEST_P(SimdEquivalence, AccumulateLerp) {
  const std::size_t n = GetParam();
  const auto src = random_reals(n + 1, 13);
  auto a = random_reals(n, 15), b = a;
  ref().accumulate_lerp(a.data(), src.data(), n, 0.3125, 0.7);
  wide_->accumulate_lerp(b.data(), src.data(), n, 0.3125, 0.7);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(a[i], b[i], 1e-15) << i;
}

TEST(SimdScalar, ReferenceValues) {
  const KernelTable& k = fracsob::simd::scalar_kernels();
  const double x[] = {1, 2, 3, 4, 5};
  const double y[] = {5, 4, 3, 2, 1};
  EXPECT_EQ(k.sum(x, 5), 15.0);
  EXPECT_EQ(k.dot(x, y, 5), 35.0);
  EXPECT_EQ(k.squared_distance(x, y, 5), 40.0);
  const cd z[] = {{3, 4}, {1, -1}};
  const double w[] = {2, 0.5};
  EXPECT_EQ(k.weighted_power(z, w, 2), 51.0);
  double out[] = {0, 0};
  const double src[] = {0, 2, 4};
  k.accumulate_lerp(out, src, 2, 0.25, 2.0);
  EXPECT_EQ(out[0], 1.0);
  EXPECT_EQ(out[1], 5.0);
}

TEST(SimdDispatch, SelectsKnownTable) {
  const KernelTable& active = fracsob::simd::kernels();
  const KernelTable* wide = fracsob::simd::avx2_kernels();
  if (wide != nullptr && std::getenv("FRACSOB_SIMD") == nullptr) {
    EXPECT_EQ(active.isa, fracsob::simd::Isa::avx2);
  } else {
    EXPECT_EQ(active.isa, fracsob::simd::Isa::scalar);
  }
  EXPECT_EQ(fracsob::simd::to_string(fracsob::simd::Isa::scalar), "scalar");
}

}  // namespace
