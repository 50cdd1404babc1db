#include <gtest/gtest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "fracsob/error.hpp"
#include "fracsob/minimax_kernel.hpp"

namespace {

using namespace fracsob;

struct PinskerCase {
  double beta, L, gamma;
};

// Closed form evaluated independently in 40-digit arithmetic.
class PinskerTable : public ::testing::TestWithParam<PinskerCase> {};

TEST_P(PinskerTable, MatchesHighPrecision) {
  const auto [beta, L, gamma] = GetParam();
  EXPECT_NEAR(pinsker_constant({beta, L}), gamma, 4e-16 * gamma);
}

INSTANTIATE_TEST_SUITE_P(
    Grid, PinskerTable,
    ::testing::Values(PinskerCase{1.0, 0.5, 0.33618410364209062134},
                      PinskerCase{1.0, 1.0, 0.42356542881870966897},
                      PinskerCase{1.0, 4.0, 0.67236820728418124268},
                      PinskerCase{0.75, 0.5, 0.33089332807705464687},
                      PinskerCase{0.75, 1.0, 0.43661636401964424979},
                      PinskerCase{0.75, 4.0, 0.76019324328321377928},
                      PinskerCase{1.5, 0.5, 0.34356469753230845891},
                      PinskerCase{1.5, 1.0, 0.40856958276917902418},
                      PinskerCase{1.5, 4.0, 0.57780464512528978002},
                      PinskerCase{2.0, 0.5, 0.34753223739739015097},
                      PinskerCase{2.0, 1.0, 0.39920970940682111699},
                      PinskerCase{2.0, 4.0, 0.52676036961964876451}));

TEST(Pinsker, LScalingAndDomain) {
  for (double beta : {0.75, 1.0, 2.5}) {
    const double ratio = pinsker_constant({beta, 8.0}) / pinsker_constant({beta, 1.0});
    EXPECT_NEAR(ratio, std::pow(8.0, 1.0 / (2.0 * beta + 1.0)), 1e-14);
  }
  EXPECT_THROW((void)pinsker_constant({0.0, 1.0}), Error);
  EXPECT_THROW((void)pinsker_constant({1.0, -1.0}), Error);
}

TEST(MinimaxConstant, ValueAndRate) {
  EXPECT_NEAR(c_min({1.0, 1.0}, 1000.0), 0.037575055059560887221, 1e-17);
  for (double beta : {0.75, 1.5}) {
    const double r = c_min({beta, 1.0}, 1e5) / c_min({beta, 1.0}, 1e4);
    EXPECT_NEAR(r, std::pow(10.0, -beta / (2.0 * beta + 1.0)), 1e-14);
  }
  const KernelSpec spec = KernelSpec::minimax({1.0, 1.0}, 1000.0);
  EXPECT_EQ(spec.beta, 1.0);
  EXPECT_DOUBLE_EQ(spec.omega_edge(), 1.0 / 0.037575055059560887221);
  EXPECT_THROW((void)c_min({1.0, 1.0}, 0.5), Error);
}

TEST(KernelHat, ShapeAndCutoff) {
  const KernelSpec spec{2.0, 0.25};  // edge at 2
  EXPECT_EQ(kernel_hat(spec, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(kernel_hat(spec, 1.0), 0.75);
  EXPECT_DOUBLE_EQ(kernel_hat(spec, -1.0), 0.75);
  EXPECT_EQ(kernel_hat(spec, 2.0), 0.0);
  EXPECT_EQ(kernel_hat(spec, -3.0), 0.0);
  EXPECT_DOUBLE_EQ(kernel_peak(spec), 2.0 * 2.0 / (3.0 * kPi));
}

// Transform of (1 - w^2)_+ is 2 (sin x - x cos x) / (pi x^3).
double quadratic_kernel(double x) {
  if (std::abs(x) < 1e-3) return 2.0 / (3.0 * kPi) * (1.0 - x * x / 10.0);
  return 2.0 * (std::sin(x) - x * std::cos(x)) / (kPi * x * x * x);
}

TEST(KernelTimeDomain, QuadraticClosedForm) {
  const KernelSpec spec{2.0, 1.0};
  const GridFunction K = kernel_time_domain(spec);
  EXPECT_NEAR(K.integral(), 1.0, 1e-6);
  // Periodization aliases the 1/x^2 tail; that error is bounded by the period wrap.
  const double tail = 4.0 / (kPi * 0.25 * K.support().length() * K.support().length());
  for (std::size_t j = 0; j < K.size(); ++j) {
    const double x = K.x(j);
    if (std::abs(x) > 0.25 * K.support().length()) continue;
    EXPECT_NEAR(K[j], quadratic_kernel(x), tail) << x;
  }
  EXPECT_NEAR(K.at(0.0), kernel_peak(spec), tail);
}

TEST(KernelTimeDomain, ScalingLaw) {
  // K_c(x) = K_1(x / s) / s with s = c^{1/beta}.
  const KernelSpec one{1.5, 1.0}, wide{1.5, 8.0};
  const double s = std::pow(8.0, 1.0 / 1.5);
  const GridFunction K1 = kernel_time_domain(one, symmetric(256.0), 1 << 14);
  const GridFunction Ks = kernel_time_domain(wide, symmetric(256.0 * s), 1 << 14);
  for (std::size_t j = 0; j < K1.size(); j += 97) {
    EXPECT_NEAR(Ks[j] * s, K1[j], 1e-12) << K1.x(j);
  }
}

TEST(KernelTimeDomain, GuardsGrid) {
  const KernelSpec spec{2.0, 1.0};
  // Step 4 puts Nyquist at pi / 4, below the edge frequency 1.
  EXPECT_THROW((void)kernel_time_domain(spec, symmetric(64.0), 32), Error);
  try {
    (void)kernel_time_domain(spec, symmetric(4.0), 64);
    FAIL() << "expected tail_check_failed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::tail_check_failed);
  }
}

TEST(KernelTimeDomain, DefaultGridMeetsEdgeCheck) {
  for (double beta : {0.75, 1.0, 2.0}) {
    const KernelSpec spec = KernelSpec::minimax({beta, 1.0}, 1e4);
    const KernelGrid g = default_kernel_grid(spec);
    EXPECT_TRUE(is_power_of_two(g.n_points));
    EXPECT_NEAR(g.support.length() / static_cast<double>(g.n_points),
                kPi / (2.0 * spec.omega_edge()), 1e-12);
    EXPECT_NEAR(kernel_time_domain(spec, g.support, g.n_points).integral(), 1.0, 1e-6);
  }
}

TEST(KernelCache, SharesEntriesAcrossThreads) {
  KernelCache cache;
  const KernelSpec spec{1.0, 0.1};
  std::vector<std::shared_ptr<const GridFunction>> got(4);
  std::vector<std::jthread> threads;
  for (std::size_t t = 0; t < got.size(); ++t)
    threads.emplace_back([&, t] { got[t] = cache.get(spec, symmetric(2048.0), 1 << 14); });
  threads.clear();
  EXPECT_EQ(cache.size(), 1u);
  for (const auto& p : got) EXPECT_EQ(p->values()[100], got[0]->values()[100]);
  EXPECT_EQ(cache.get(spec, symmetric(1024.0), 1 << 13)->size(), std::size_t{1} << 13);
  EXPECT_EQ(cache.size(), 2u);
  EXPECT_EQ(cache.get(spec, symmetric(2048.0), 1 << 14), cache.get(spec, symmetric(2048.0), 1 << 14));
}

}  // namespace
