#pragma once

// Uniform-grid functions, the continuous Fourier transform bridge, fractional
// derivatives by Fourier multiplier and Sobolev seminorms.
//
// Transform convention: F(w) = int f(x) exp(i w x) dx, inverse (1/2pi) int F(w) exp(-i w x) dw.

#include <complex>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace fracsob {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const noexcept { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Symmetric interval [-half, half).
inline Interval symmetric(double half) { return {-half, half}; }

bool is_power_of_two(std::size_t n) noexcept;

/// Real samples at x_j = lo + j * dx, dx = (hi - lo) / n, with n a power of two.
class GridFunction {
 public:
  GridFunction(Interval support, std::vector<double> values);

  static GridFunction zeros(Interval support, std::size_t n_points);
  static GridFunction sample(Interval support, std::size_t n_points,
                             const std::function<double(double)>& f);

  Interval support() const noexcept { return support_; }
  std::size_t size() const noexcept { return values_.size(); }
  double step() const noexcept { return support_.length() / static_cast<double>(values_.size()); }
  double x(std::size_t j) const noexcept { return support_.lo + static_cast<double>(j) * step(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }
  double operator[](std::size_t j) const noexcept { return values_[j]; }

  /// Linear interpolation between grid points; zero outside [lo, x_{n-1}].
  double at(double x) const noexcept;

  /// Trapezoid rule with half weights at the two grid ends.
  double integral() const noexcept;
  /// Trapezoid integral of f^2.
  double l2_norm_sq() const noexcept;
  double max_value() const noexcept;

  /// Values >= -1e-12 and integral within `tol` of 1.
  bool is_density(double tol = 1e-6) const noexcept;

 private:
  Interval support_;
  std::vector<double> values_;
};

/// Complex samples at w_k = (k - M/2) * dw, k = 0..M-1, i.e. the grid [-w_max, w_max).
class SpectralFunction {
 public:
  SpectralFunction(double d_omega, std::vector<complex> values);

  std::size_t size() const noexcept { return values_.size(); }
  double d_omega() const noexcept { return d_omega_; }
  double omega_max() const noexcept { return d_omega_ * static_cast<double>(values_.size() / 2); }
  double omega(std::size_t k) const noexcept {
    return (static_cast<double>(k) - static_cast<double>(values_.size() / 2)) * d_omega_;
  }
  /// Index of w = 0.
  std::size_t zero_index() const noexcept { return values_.size() / 2; }

  std::span<const complex> values() const noexcept { return values_; }
  std::span<complex> values() noexcept { return values_; }
  complex operator[](std::size_t k) const noexcept { return values_[k]; }

  /// max_k |F(w_k) - conj(F(-w_k))|, over pairs that are both on the grid.
  double hermitian_defect() const noexcept;

  /// Midpoint rule for (1/2pi) int g(w) |F(w)|^2 dw.
  double weighted_energy(const std::function<double(double)>& weight) const;

 private:
  double d_omega_;
  std::vector<complex> values_;
};

struct SobolevClass {
  double beta;
  double L;
};

struct SpectralOptions {
  /// Frequencies above tail_band * w_max count as the tail.
  double tail_band = 0.9;
  /// Largest allowed share of the multiplier-weighted energy in the tail.
  double tail_tolerance = 1e-6;
  /// Relative Hermitian symmetry tolerance for inverse transforms.
  double hermitian_tolerance = 1e-8;
};

/// F(w) sampled with dw = 2pi / (hi - lo) on the smallest power-of-two grid covering
/// [-omega_max, omega_max). Frequencies at or beyond the time-grid Nyquist are zero.
SpectralFunction forward_transform(const GridFunction& f, double omega_max);
/// Same, at the time-grid Nyquist frequency pi / dx.
SpectralFunction forward_transform(const GridFunction& f);

/// Real function on `support` with `n_points` samples. Fast transform path when
/// support.length() == 2pi / dw, direct summation otherwise.
GridFunction inverse_transform(const SpectralFunction& F, Interval support, std::size_t n_points,
                               const SpectralOptions& options = {});

/// (-i w)^gamma on the principal branch: |w|^gamma exp(-i sgn(w) gamma pi / 2), zero at w = 0.
complex derivative_multiplier(double omega, double gamma) noexcept;

/// Share of sum |w|^{2 gamma} |F|^2 carried by |w| > band * w_max.
double tail_energy_fraction(const SpectralFunction& F, double gamma, double band = 0.9);

GridFunction fractional_derivative(const GridFunction& f, double gamma,
                                   const SpectralOptions& options = {});

/// (1/2pi) int |w|^{2 beta} |F(w)|^2 dw for beta > -1/2: the grid sum over w != 0 minus
/// seminorm_cusp_correction.
double sobolev_seminorm_sq(const SpectralFunction& F, double beta,
                           const SpectralOptions& options = {});
/// The grid sum of |w|^s g(w) dw over w != 0 (g = |F|^2 even and smooth, s = 2 beta) exceeds
/// the integral by 2 sum_j zeta(-s - 2j) g^{(2j)}(0) dw^{s + 2j + 1} / (2j)!. Returns the
/// j = 0, 1 terms divided by 2pi. Zero for even integer s.
double seminorm_cusp_correction(const SpectralFunction& F, double beta);
double sobolev_seminorm_sq(const GridFunction& f, double beta, const SpectralOptions& options = {});

struct Membership {
  bool member;
  double margin;  // L - seminorm^2
  double seminorm_sq;
};

Membership class_membership(const GridFunction& f, const SobolevClass& cls,
                            const SpectralOptions& options = {});

// CSV with header `x,value` / `omega,re,im`; lines starting with '#' are skipped on read.
void write_csv(std::ostream& out, const GridFunction& f);
void write_csv(std::ostream& out, const SpectralFunction& F);
GridFunction read_grid_csv(std::istream& in);
SpectralFunction read_spectral_csv(std::istream& in);

}  // namespace fracsob
