#include "fracsob/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsob/error.hpp"

namespace fracsob {

double fisher_info_numeric(const PerturbedDensity& pd, int kappa, double floor) {
  const LfGrid& grid = *pd.grid;
  const GridFunction& plateau = grid.plateau();
  GridFunction p_phi = grid.perturbation(kappa);
  for (std::size_t j = 0; j < p_phi.size(); ++j) p_phi.values()[j] *= plateau[j];
  const double c = p_phi.integral();

  std::vector<double> integrand(plateau.size(), 0.0);
  for (std::size_t j = 0; j < plateau.size(); ++j) {
    const double f = pd.density[j];
    if (plateau[j] < floor || !(f > 0.0)) continue;
    const double d = (p_phi[j] - f * c) / pd.b;
    integrand[j] = d * d / f;
  }
  return GridFunction(plateau.support(), std::move(integrand)).integral();
}

double fourier_coefficient(const PerturbedDensity& pd, int kappa) {
  GridFunction prod = pd.grid->perturbation(kappa);
  for (std::size_t j = 0; j < prod.size(); ++j) prod.values()[j] *= pd.density[j];
  return std::sqrt(pd.A()) * prod.integral();
}

double default_fd_step(double sigma_kappa, double A, double beta) {
  return 1e-5 * std::max(sigma_kappa, std::pow(A, -2.0 * beta));
}

FiniteDifference fourier_coeff_derivative_numeric(const PerturbedDensity& pd, int kappa, double step) {
  require(kappa != 0, Errc::invalid_argument, "kappa must be nonzero");
  const double theta0 = pd.theta.get(kappa);
  auto central = [&](double h) {
    if (!(h > 0.0) || theta0 + h == theta0 || theta0 - h == theta0) {
      std::ostringstream msg;
      msg << "finite-difference step " << h << " underflows at theta = " << theta0;
      throw Error(Errc::step_underflow, msg.str());
    }
    Theta up = pd.theta, down = pd.theta;
    up.set(kappa, theta0 + h);
    down.set(kappa, theta0 - h);
    const double cu = fourier_coefficient(build_f_theta(up, pd.grid), kappa);
    const double cd = fourier_coefficient(build_f_theta(down, pd.grid), kappa);
    return (cu - cd) / (2.0 * h);
  };
  const double d1 = central(step);
  const double d2 = central(0.5 * step);
  const bool ok = std::abs(d1 - d2) <= 1e-4 * std::abs(d2);
  return {(4.0 * d2 - d1) / 3.0, d1, d2, step, ok};
}

}  // namespace fracsob
