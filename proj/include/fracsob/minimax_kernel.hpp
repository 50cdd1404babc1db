#pragma once

// Pinsker's constant, the minimax tuning constant and the kernel with
// Fourier transform (1 - c|w|^beta)_+.

#include <cstddef>
#include <map>
#include <memory>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "fracsob/spectral.hpp"

namespace fracsob {

/// gamma(beta, L) = (2b+1) (pi (2b+1)(b+1)/b)^{-2b/(2b+1)} L^{1/(2b+1)}.
double pinsker_constant(const SobolevClass& cls);

/// (n L pi (2b+1)(b+1)/b)^{-b/(2b+1)}; n is a sample size >= 1.
double c_min(const SobolevClass& cls, double n);

struct KernelSpec {
  double beta;
  double c;

  static KernelSpec minimax(const SobolevClass& cls, double n);
  /// c^{-1/beta}: the transform vanishes for |w| >= omega_edge.
  double omega_edge() const;
};

double kernel_hat(const KernelSpec& spec, double omega) noexcept;
/// kernel_hat at every frequency of `grid`.
std::vector<double> kernel_hat(const KernelSpec& spec, const SpectralFunction& grid);

/// K(0) = (1/2pi) int K_hat = omega_edge beta / ((beta + 1) pi).
double kernel_peak(const KernelSpec& spec);

struct KernelGrid {
  Interval support;
  std::size_t n_points;
};

/// Symmetric support with step pi / (2 omega_edge), widened until the edge check passes.
KernelGrid default_kernel_grid(const KernelSpec& spec, double tail_tolerance = 1e-6);

/// Inverse transform of the kernel_hat samples on the support's frequency grid. The result
/// is exact for the periodized kernel; |int K - 1| < tail_tolerance guards truncation.
GridFunction kernel_time_domain(const KernelSpec& spec, Interval support, std::size_t n_points,
                                double tail_tolerance = 1e-6);
GridFunction kernel_time_domain(const KernelSpec& spec);

/// Thread-safe memo of kernel_time_domain keyed by (beta, c, support, n_points).
class KernelCache {
 public:
  std::shared_ptr<const GridFunction> get(const KernelSpec& spec, Interval support,
                                          std::size_t n_points);
  std::size_t size() const;

 private:
  using Key = std::tuple<double, double, double, double, std::size_t>;
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const GridFunction>> entries_;
};

}  // namespace fracsob
