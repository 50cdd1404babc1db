#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fracsob/error.hpp"
#include "fracsob/spectral.hpp"

namespace {

using namespace fracsob;

double phi(double x, double mu = 0.0, double sd = 1.0) {
  const double z = (x - mu) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * kPi));
}

GridFunction gaussian_grid(double mu = 0.0, double sd = 1.0, std::size_t n = 2048) {
  return GridFunction::sample({-20.0, 20.0}, n, [&](double x) { return phi(x, mu, sd); });
}

template <class Fn>
void expect_grid_near(const GridFunction& g, Fn&& f, double tol) {
  double worst = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) worst = std::max(worst, std::abs(g[j] - f(g.x(j))));
  EXPECT_LT(worst, tol);
}

TEST(GridFunction, RejectsBadGrids) {
  EXPECT_THROW(GridFunction({0.0, 1.0}, std::vector<double>(3, 0.0)), Error);
  EXPECT_THROW(GridFunction({1.0, 1.0}, std::vector<double>(4, 0.0)), Error);
  EXPECT_THROW(GridFunction::zeros({0.0, 1.0}, 1), Error);
}

TEST(GridFunction, TrapezoidAndInterpolation) {
  const auto g = GridFunction::sample({0.0, 4.0}, 4, [](double x) { return x; });
  // Grid points 0, 1, 2, 3: trapezoid of x is 4.5.
  EXPECT_DOUBLE_EQ(g.integral(), 4.5);
  EXPECT_DOUBLE_EQ(g.at(1.25), 1.25);
  EXPECT_EQ(g.at(-0.5), 0.0);
  EXPECT_EQ(g.at(3.5), 0.0);
  EXPECT_TRUE(gaussian_grid().is_density());
}

TEST(SpectralTransform, GaussianCharacteristicFunction) {
  const SpectralFunction F = forward_transform(gaussian_grid(), 20.0);
  ASSERT_GE(F.omega_max(), 20.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double w = F.omega(k);
    if (std::abs(w) >= 20.0) continue;
    worst = std::max(worst, std::abs(F[k] - complex(std::exp(-0.5 * w * w), 0.0)));
  }
  EXPECT_LT(worst, 1e-12);
  EXPECT_DOUBLE_EQ(F.d_omega(), 2.0 * kPi / 40.0);
}

TEST(SpectralTransform, ShiftGivesPositivePhase) {
  // int f(x - 1) exp(i w x) dx = exp(i w) F(w).
  const SpectralFunction F = forward_transform(gaussian_grid(1.0, 0.7), 10.0);
  double worst = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double w = F.omega(k);
    const complex expect = std::polar(std::exp(-0.5 * 0.49 * w * w), w);
    worst = std::max(worst, std::abs(F[k] - expect));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(SpectralTransform, BoxTransformMatchesSinc) {
  // Indicator of [-1, 1) sampled on the grid; the transform of the grid trapezoid of a box
  // converges to 2 sin(w) / w at low frequencies.
  const auto box = GridFunction::sample({-8.0, 8.0}, 1 << 14,
                                        [](double x) { return std::abs(x) < 1.0 ? 1.0 : 0.0; });
  const SpectralFunction F = forward_transform(box, 5.0);
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double w = F.omega(k);
    const double exact = w == 0.0 ? 2.0 : 2.0 * std::sin(w) / w;
    EXPECT_NEAR(F[k].real(), exact, 5e-3) << w;
  }
}

TEST(SpectralTransform, RoundTripFastAndDirect) {
  const GridFunction f = gaussian_grid(0.5, 1.3, 1024);
  const SpectralFunction F = forward_transform(f);
  const GridFunction back = inverse_transform(F, f.support(), f.size());
  expect_grid_near(back, [](double x) { return phi(x, 0.5, 1.3); }, 1e-13);
  // Sub-window with a different length forces the direct path.
  const GridFunction part = inverse_transform(F, {-3.0, 5.0}, 64);
  expect_grid_near(part, [](double x) { return phi(x, 0.5, 1.3); }, 1e-12);
}

TEST(SpectralTransform, InverseRejectsNonHermitian) {
  std::vector<complex> v(64, complex(0.0, 0.0));
  v[32] = 1.0;
  v[33] = complex(0.0, 1.0);
  v[31] = complex(0.0, 1.0);  // the conjugate pair would be -i
  const SpectralFunction F(0.5, v);
  try {
    (void)inverse_transform(F, {-2.0 * kPi, 2.0 * kPi}, 64);
    FAIL() << "expected not_hermitian";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_hermitian);
  }
}

TEST(SpectralFunction, HermitianDefectAndEnergy) {
  const SpectralFunction F = forward_transform(gaussian_grid());
  EXPECT_LT(F.hermitian_defect(), 1e-14);
  // (1/2pi) int exp(-w^2) dw = 1 / (2 sqrt pi).
  EXPECT_NEAR(F.weighted_energy([](double) { return 1.0; }), 0.28209479177387814347, 1e-13);
}

TEST(FractionalDerivative, MultiplierBranch) {
  EXPECT_EQ(derivative_multiplier(3.0, 0.0), complex(1.0, 0.0));
  EXPECT_EQ(derivative_multiplier(0.0, 0.5), complex(0.0, 0.0));
  const complex m = derivative_multiplier(2.0, 1.0);
  EXPECT_NEAR(m.real(), 0.0, 1e-15);
  EXPECT_NEAR(m.imag(), -2.0, 1e-15);
  const complex h = derivative_multiplier(-4.0, 0.5);
  EXPECT_NEAR(h.real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(h.imag(), std::sqrt(2.0), 1e-15);
}

TEST(FractionalDerivative, IntegerOrdersOfGaussian) {
  const GridFunction f = gaussian_grid();
  expect_grid_near(fractional_derivative(f, 1.0), [](double x) { return -x * phi(x); }, 1e-12);
  expect_grid_near(fractional_derivative(f, 2.0), [](double x) { return (x * x - 1.0) * phi(x); },
                   1e-12);
  const GridFunction same = fractional_derivative(f, 0.0);
  EXPECT_EQ(std::vector<double>(same.values().begin(), same.values().end()),
            std::vector<double>(f.values().begin(), f.values().end()));
}

TEST(FractionalDerivative, HalfOrdersCompose) {
  const GridFunction f = gaussian_grid(0.0, 1.0, 4096);
  const GridFunction twice = fractional_derivative(fractional_derivative(f, 0.5), 0.5);
  expect_grid_near(twice, [](double x) { return -x * phi(x); }, 1e-10);
  const GridFunction mixed = fractional_derivative(fractional_derivative(f, 0.3), 1.2);
  const GridFunction direct = fractional_derivative(f, 1.5);
  double worst = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) worst = std::max(worst, std::abs(mixed[j] - direct[j]));
  EXPECT_LT(worst, 1e-10);
}

TEST(FractionalDerivative, TailCheckRejectsUnderResolvedInput) {
  // A box has a slowly decaying transform: its second derivative is not resolvable.
  const auto box = GridFunction::sample({-4.0, 4.0}, 256,
                                        [](double x) { return std::abs(x) < 1.0 ? 1.0 : 0.0; });
  try {
    (void)fractional_derivative(box, 2.0);
    FAIL() << "expected tail_check_failed";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::tail_check_failed);
  }
  EXPECT_THROW((void)fractional_derivative(box, -0.5), Error);
}

struct SeminormCase {
  double beta;
  double expect;  // Gamma(beta + 1/2) / (2 pi) for the standard Gaussian
};

class GaussianSeminorm : public ::testing::TestWithParam<SeminormCase> {};

TEST_P(GaussianSeminorm, MatchesGammaFormula) {
  const auto [beta, expect] = GetParam();
  const GridFunction f = GridFunction::sample({-80.0, 80.0}, 1 << 14, [](double x) { return phi(x); });
  EXPECT_NEAR(sobolev_seminorm_sq(f, beta), expect, 5e-9 * std::max(1.0, expect));
}

INSTANTIATE_TEST_SUITE_P(Orders, GaussianSeminorm,
                         ::testing::Values(SeminormCase{1.0, 0.14104739588693907174},
                                           SeminormCase{0.0, 0.28209479177387814347},
                                           SeminormCase{0.5, 0.15915494309189533577},
                                           SeminormCase{-0.25, 0.57703373861646968862},
                                           SeminormCase{2.0, 0.21157109383040860761}));

TEST(Seminorm, CuspCorrectionTracksZeta) {
  // On a coarse grid the uncorrected sum would be off by 2 zeta(-1) dw^2 / 2pi for beta = 1/2.
  const GridFunction f = gaussian_grid(0.0, 1.0, 2048);
  const SpectralFunction F = forward_transform(f);
  const double dw = F.d_omega();
  EXPECT_NEAR(seminorm_cusp_correction(F, 0.5), -dw * dw / (12.0 * kPi) * (1.0 + dw * dw / 10.0),
              5e-8);  // curvature by second difference
  EXPECT_NEAR(sobolev_seminorm_sq(F, 0.5), 1.0 / (2.0 * kPi), 1e-7);
  EXPECT_NEAR(seminorm_cusp_correction(F, 1.0), 0.0, 1e-18);
}

TEST(Seminorm, ParsevalAgainstTrapezoid) {
  const GridFunction f = gaussian_grid(0.3, 0.8, 2048);
  EXPECT_NEAR(sobolev_seminorm_sq(f, 0.0), f.l2_norm_sq(), 1e-13);
  const GridFunction d = fractional_derivative(f, 1.0);
  EXPECT_NEAR(sobolev_seminorm_sq(f, 1.0), d.l2_norm_sq(), 1e-12);
}

TEST(Seminorm, ClassMembership) {
  const GridFunction f = gaussian_grid();
  const Membership in = class_membership(f, {1.0, 0.2});
  EXPECT_TRUE(in.member);
  EXPECT_NEAR(in.margin, 0.2 - 0.14104739588693907174, 1e-10);
  const Membership out = class_membership(f, {1.0, 0.1});
  EXPECT_FALSE(out.member);
  EXPECT_LT(out.margin, 0.0);
  EXPECT_THROW((void)class_membership(f, {0.0, 1.0}), Error);
}

TEST(SpectralCsv, RoundTrip) {
  const GridFunction f = gaussian_grid(0.0, 1.0, 64);
  std::stringstream s;
  write_csv(s, f);
  const GridFunction g = read_grid_csv(s);
  EXPECT_EQ(g.support(), f.support());
  for (std::size_t j = 0; j < f.size(); ++j) EXPECT_EQ(g[j], f[j]);

  const SpectralFunction F = forward_transform(f);
  std::stringstream t;
  write_csv(t, F);
  const SpectralFunction G = read_spectral_csv(t);
  EXPECT_EQ(G.d_omega(), F.d_omega());
  for (std::size_t k = 0; k < F.size(); ++k) EXPECT_EQ(G[k], F[k]);
}

}  // namespace
