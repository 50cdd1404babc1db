#pragma once

// The compactly supported C-infinity bump f0(x) = exp(-a / ((x + 1/2)(1/2 - x))) / c_a on
// [-1/2, 1/2], its calibration, and its convolution with the box of half-width A - 1/2.

#include <cstddef>
#include <vector>

#include "fracsob/spectral.hpp"

namespace fracsob {

/// exp(-a / ((x + 1/2)(1/2 - x))) inside (-1/2, 1/2), 0 elsewhere.
double bump_kernel(double x, double a) noexcept;
/// c_a = int bump_kernel(x, a) dx.
double bump_normalizer(double a);

struct BumpDensity {
  double a = 1.0;
  double c_a;

  explicit BumpDensity(double a = 1.0);
  double operator()(double x) const noexcept { return bump_kernel(x, a) / c_a; }
  /// Grid samples normalized so the grid trapezoid integral is exactly 1.
  GridFunction on_grid(Interval support, std::size_t n_points) const;
};

/// int |f0_hat(w) sin(w/2) / (w/2)| dw, by midpoint rule on the transform grid.
double calibration_integral(double a, std::size_t n_points = std::size_t{1} << 18,
                            double half_width = 8.0);

struct CalibrationResult {
  std::vector<double> a_grid;
  std::vector<double> residual;  // calibration_integral - 2pi
  bool root_found = false;
  std::size_t sign_changes = 0;
  double a = 1.0;                // the root nearest a = 1, or the fallback a = 1
  double c_a = 0.0;
};

/// Log-spaced scan of the calibration residual over a in [1e-3, 1e2] followed by bisection
/// on the sign change nearest a = 1. Reports the scan and falls back to a = 1 without one.
CalibrationResult calibrate_a(std::size_t scan_points = 26);

/// Centred cosine/sine table for 2pi r / N, r = 0..N-1.
struct PhaseTable {
  explicit PhaseTable(std::size_t n);
  std::vector<double> cos, sin;
};

/// Grid [-pad A, pad A) for the perturbed family, with the plateau f0 * g_A.
class LfGrid {
 public:
  static constexpr int kPad = 4;

  explicit LfGrid(double A, std::size_t n_points = std::size_t{1} << 14,
                  const BumpDensity& bump = BumpDensity(1.0));

  double A() const noexcept { return A_; }
  Interval support() const noexcept { return plateau_.support(); }
  std::size_t size() const noexcept { return plateau_.size(); }
  const GridFunction& plateau() const noexcept { return plateau_; }
  const BumpDensity& bump() const noexcept { return bump_; }

  /// out += weight * phi_k on the grid. phi_k is (1/sqrt A) cos(k pi x / A) for k > 0 and
  /// (1/sqrt A) sin(k pi x / A) for k < 0, on the half-open window [-A, A).
  void add_perturbation(std::span<double> out, int k, double weight) const;
  GridFunction perturbation(int k) const;

  /// Grid indices of the window [-A, A).
  std::size_t window_begin() const noexcept { return window_begin_; }
  std::size_t window_end() const noexcept { return window_end_; }

 private:
  double A_;
  BumpDensity bump_;
  GridFunction plateau_;
  std::size_t window_begin_ = 0, window_end_ = 0;
  PhaseTable phases_;
  long long frequency_step_ = 0;  // k pad advances the phase index by k * pad per grid step
};

/// Transform of g_A: 2 sin((A - 1/2) w) / ((2A - 1) w).
double box_transform(double omega, double A) noexcept;

/// f0 * g_A by spectral convolution on the default grid.
GridFunction plateau_density(double A, std::size_t n_points = std::size_t{1} << 14);
/// Closed form (F0(x + A - 1/2) - F0(x - A + 1/2)) / (2A - 1) with F0 the CDF of f0.
double plateau_reference(double x, double A, const BumpDensity& bump);

GridFunction perturbation(int k, double A, std::size_t n_points = std::size_t{1} << 14);

/// Trapezoid Gram matrix of phi_k for 0 < |k| <= K ordered -K..-1, 1..K.
std::vector<std::vector<double>> perturbation_gram(const LfGrid& grid, int K);

}  // namespace fracsob
