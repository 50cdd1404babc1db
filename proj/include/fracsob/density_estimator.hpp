#pragma once

// Kernel density estimation with the minimax kernel, the exact Fourier-domain MISE and
// its Monte Carlo counterpart, and sampling from grid densities.

#include <cstdint>
#include <span>
#include <vector>

#include "fracsob/minimax_kernel.hpp"
#include "fracsob/rng.hpp"
#include "fracsob/spectral.hpp"

namespace fracsob {

struct Sample {
  std::vector<double> values;
  std::uint64_t master_seed = 0;
  std::uint64_t stream = 0;
};

struct MiseEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replications = 0;
  double n = 0.0;
};

/// Draws from the piecewise-linear interpolant of a grid density by rejection under the
/// per-cell envelope max(f_j, f_{j+1}).
class DensitySampler {
 public:
  explicit DensitySampler(const GridFunction& f);

  double draw(RngStream& rng) const;
  void draw(std::span<double> out, RngStream& rng) const;

 private:
  Interval support_;
  double step_;
  std::vector<double> values_;
  std::vector<double> cumulative_;  // envelope mass up to the end of each cell
};

Sample rejection_sample(const GridFunction& f, std::size_t n, RngStream& rng);

/// Binned KDE on a fixed evaluation grid: linear binning onto the grid, then a zero-padded
/// FFT convolution with the kernel sampled at the same step for lags |d| < S (S = grid length).
class KdeEngine {
 public:
  KdeEngine(const GridFunction& kernel, Interval eval_support, std::size_t eval_points);
  KdeEngine(const KernelSpec& spec, Interval eval_support, std::size_t eval_points);

  GridFunction evaluate(std::span<const double> sample) const;
  Interval eval_support() const noexcept { return eval_support_; }
  std::size_t eval_points() const noexcept { return eval_points_; }

 private:
  void set_kernel(const GridFunction& kernel);

  Interval eval_support_;
  std::size_t eval_points_;
  std::vector<complex> kernel_spectrum_;  // length 2 * eval_points
};

/// Kernel grid used by the engine: [-2S, 2S) with four times the evaluation points. The
/// extra width keeps periodization of the band-limited kernel away from the used lags.
Interval kde_kernel_support(Interval eval_support);

GridFunction kde_evaluate(const Sample& sample, const GridFunction& kernel, Interval eval_support,
                          std::size_t eval_points);
/// Direct (1/n) sum_i K(x - X_i) with K linearly interpolated between its grid points.
GridFunction kde_evaluate_naive(const Sample& sample, const GridFunction& kernel,
                                Interval eval_support, std::size_t eval_points);

/// Trapezoid integrated squared error on a shared grid.
double integrated_squared_error(const GridFunction& estimate, const GridFunction& truth);

struct MiseTerms {
  double variance;  // coefficient of 1/n
  double bias;
  double at(double n) const noexcept { return variance / n + bias; }
};

/// (1/2pi) int [K^2 (1 - |F|^2) / n + (1 - K)^2 |F|^2] dw on the frequency grid of f_hat.
MiseTerms exact_mise_terms(const SpectralFunction& f_hat, std::span<const double> kernel_hat);
double exact_mise(const SpectralFunction& f_hat, std::span<const double> kernel_hat, double n);

struct MonteCarloOptions {
  unsigned workers = 0;
};

/// Replication r uses RngStream(master_seed, r); the estimate is independent of the worker
/// count. The grid of f is the evaluation grid.
MiseEstimate monte_carlo_mise(const GridFunction& f, const SobolevClass& cls, std::size_t n,
                              std::size_t replications, std::uint64_t master_seed,
                              const MonteCarloOptions& options = {});

/// Standard deviation of the centred Gaussian whose seminorm^2 equals fill * L.
double in_class_gaussian_sd(const SobolevClass& cls, double fill);
GridFunction gaussian_density(double sd, Interval support, std::size_t n_points);

}  // namespace fracsob
