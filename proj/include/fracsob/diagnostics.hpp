#pragma once

// Numerical Fisher information and Fourier-coefficient derivatives of the perturbed family.

#include "fracsob/perturbed.hpp"

namespace fracsob {

/// int (d f_theta / d theta_kappa)^2 / f_theta dx, with
/// d f_theta / d theta_kappa = (plateau phi_kappa - f_theta int plateau phi_kappa) / b.
/// The integrand is set to 0 where the plateau is below `floor`.
double fisher_info_numeric(const PerturbedDensity& pd, int kappa, double floor = 1e-30);

/// sqrt(A) int f_theta phi_kappa: the real part of f_theta_hat(kappa pi / A) for kappa > 0,
/// the sine-side analogue for kappa < 0.
double fourier_coefficient(const PerturbedDensity& pd, int kappa);

struct FiniteDifference {
  double value;       // Richardson-extrapolated derivative
  double at_step;     // central difference with step h
  double at_half;     // central difference with step h / 2
  double step;
  bool richardson_ok; // at_step and at_half agree to 4 significant digits
};

/// 1e-5 max(sigma_kappa, A^{-2 beta}).
double default_fd_step(double sigma_kappa, double A, double beta);

/// Central difference in theta_kappa of fourier_coefficient(pd, kappa).
FiniteDifference fourier_coeff_derivative_numeric(const PerturbedDensity& pd, int kappa, double step);

}  // namespace fracsob
