#include "fracsob/minimax_kernel.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "fracsob/error.hpp"

namespace fracsob {
namespace {

void check_class(const SobolevClass& cls) {
  require(std::isfinite(cls.beta) && cls.beta > 0.0, Errc::invalid_argument, "beta must be > 0");
  require(std::isfinite(cls.L) && cls.L > 0.0, Errc::invalid_argument, "L must be finite and > 0");
}

}  // namespace

double pinsker_constant(const SobolevClass& cls) {
  check_class(cls);
  const double b = cls.beta;
  const double q = kPi * (2.0 * b + 1.0) * (b + 1.0) / b;
  return (2.0 * b + 1.0) * std::pow(q, -2.0 * b / (2.0 * b + 1.0)) *
         std::pow(cls.L, 1.0 / (2.0 * b + 1.0));
}

double c_min(const SobolevClass& cls, double n) {
  check_class(cls);
  require(std::isfinite(n) && n >= 1.0, Errc::invalid_argument, "sample size must be >= 1");
  const double b = cls.beta;
  return std::pow(n * cls.L * kPi * (2.0 * b + 1.0) * (b + 1.0) / b, -b / (2.0 * b + 1.0));
}

KernelSpec KernelSpec::minimax(const SobolevClass& cls, double n) {
  return {cls.beta, c_min(cls, n)};
}

double KernelSpec::omega_edge() const {
  require(beta > 0.0 && c > 0.0, Errc::invalid_argument, "kernel needs beta > 0 and c > 0");
  return std::pow(c, -1.0 / beta);
}

double kernel_hat(const KernelSpec& spec, double omega) noexcept {
  const double v = 1.0 - spec.c * std::pow(std::abs(omega), spec.beta);
  return v > 0.0 ? v : 0.0;
}

std::vector<double> kernel_hat(const KernelSpec& spec, const SpectralFunction& grid) {
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = kernel_hat(spec, grid.omega(k));
  return out;
}

double kernel_peak(const KernelSpec& spec) {
  return spec.omega_edge() * spec.beta / ((spec.beta + 1.0) * kPi);
}

GridFunction kernel_time_domain(const KernelSpec& spec, Interval support, std::size_t n_points,
                                double tail_tolerance) {
  require(n_points >= 2 && is_power_of_two(n_points), Errc::invalid_grid,
          "kernel grid size must be a power of two");
  const double edge = spec.omega_edge();
  const double dx = support.length() / static_cast<double>(n_points);
  if (edge >= kPi / dx) {
    std::ostringstream msg;
    msg << "kernel band edge " << edge << " exceeds the grid Nyquist frequency " << kPi / dx
        << "; refine the grid";
    throw Error(Errc::invalid_grid, msg.str());
  }
  const double d_omega = 2.0 * kPi / support.length();
  std::vector<complex> hat(n_points);
  SpectralFunction K(d_omega, std::move(hat));
  for (std::size_t k = 0; k < K.size(); ++k) K.values()[k] = kernel_hat(spec, K.omega(k));
  GridFunction out = inverse_transform(K, support, n_points);

  const double mass = out.integral();
  if (std::abs(mass - 1.0) >= tail_tolerance) {
    std::ostringstream msg;
    msg << "kernel integrates to " << mass << " on [" << support.lo << ", " << support.hi
        << "); widen the support";
    throw Error(Errc::tail_check_failed, msg.str());
  }
  return out;
}

KernelGrid default_kernel_grid(const KernelSpec& spec, double tail_tolerance) {
  const double dx = kPi / (2.0 * spec.omega_edge());
  std::size_t n = 256;
  for (; n <= (std::size_t{1} << 24); n *= 2) {
    const Interval support = symmetric(0.5 * dx * static_cast<double>(n));
    try {
      kernel_time_domain(spec, support, n, 0.1 * tail_tolerance);
      return {support, n};
    } catch (const Error& e) {
      if (e.code() != Errc::tail_check_failed) throw;
    }
  }
  throw Error(Errc::tail_check_failed, "no kernel grid up to 2^24 points meets the edge check");
}

GridFunction kernel_time_domain(const KernelSpec& spec) {
  const KernelGrid g = default_kernel_grid(spec);
  return kernel_time_domain(spec, g.support, g.n_points);
}

std::shared_ptr<const GridFunction> KernelCache::get(const KernelSpec& spec, Interval support,
                                                     std::size_t n_points) {
  const Key key{spec.beta, spec.c, support.lo, support.hi, n_points};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto built = std::make_shared<const GridFunction>(kernel_time_domain(spec, support, n_points));
  std::unique_lock lock(mutex_);
  return entries_.emplace(key, std::move(built)).first->second;
}

std::size_t KernelCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace fracsob
