#include "fracsob/perturbed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsob/error.hpp"

namespace fracsob {

Theta::Theta(std::vector<ThetaTerm> terms) {
  for (const ThetaTerm& t : terms) set(t.k, get(t.k) + t.value);
}

void Theta::set(int k, double value) {
  require(k != 0, Errc::invalid_argument, "theta index must be nonzero");
  require(std::isfinite(value), Errc::invalid_argument, "theta values must be finite");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const ThetaTerm& t, int key) { return t.k < key; });
  if (it != terms_.end() && it->k == k) {
    if (value == 0.0)
      terms_.erase(it);
    else
      it->value = value;
  } else if (value != 0.0) {
    terms_.insert(it, {k, value});
  }
}

double Theta::get(int k) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const ThetaTerm& t, int key) { return t.k < key; });
  return it != terms_.end() && it->k == k ? it->value : 0.0;
}

int Theta::max_abs_k() const noexcept {
  int m = 0;
  for (const ThetaTerm& t : terms_) m = std::max(m, std::abs(t.k));
  return m;
}

double Theta::l1() const noexcept {
  double s = 0.0;
  for (const ThetaTerm& t : terms_) s += std::abs(t.value);
  return s;
}

double Theta::weighted_sq(double A, double gamma) const noexcept {
  double s = 0.0;
  for (const ThetaTerm& t : terms_) {
    const double w = gamma == 0.0 ? 1.0 : std::pow(std::abs(t.k) * kPi / A, 2.0 * gamma);
    s += t.value * t.value * w;
  }
  return s;
}

double ParameterSet::l1_budget() const { return std::pow(A, 1.0 - 2.0 * beta); }
double ParameterSet::quad_budget() const { return 4.0 * A * A * L; }

ThetaMembership theta_membership(const Theta& theta, const ParameterSet& set) {
  const double l1 = theta.l1();
  const double quad = theta.weighted_sq(set.A, set.beta);
  const double l1_margin = set.l1_budget() - l1;
  const double quad_margin = set.quad_budget() - quad;
  return {l1_margin >= 0.0 && quad_margin >= 0.0, l1, quad, l1_margin, quad_margin};
}

bool PerturbedDensity::normalizer_in_bracket() const noexcept {
  return std::abs(b - 1.0) <= std::pow(A(), -1.5);
}

PerturbedDensity build_f_theta(const Theta& theta, std::shared_ptr<const LfGrid> grid) {
  require(grid != nullptr, Errc::invalid_argument, "missing grid");
  const std::size_t n = grid->size();
  std::vector<double> bracket(n, 1.0);
  for (const ThetaTerm& t : theta.terms()) grid->add_perturbation(bracket, t.k, t.value);

  const double low = *std::min_element(bracket.begin() + static_cast<std::ptrdiff_t>(grid->window_begin()),
                                       bracket.begin() + static_cast<std::ptrdiff_t>(grid->window_end()));
  if (!(low > 0.0)) {
    std::ostringstream msg;
    msg << "1 + sum theta_k phi_k reaches " << low << " on [-A, A); f_theta is not a density";
    throw Error(Errc::invalid_density, msg.str());
  }

  const GridFunction& plateau = grid->plateau();
  std::vector<double> raw(n);
  for (std::size_t j = 0; j < n; ++j) raw[j] = plateau[j] * bracket[j];
  GridFunction f(plateau.support(), std::move(raw));
  const double b = f.integral();
  for (double& v : f.values()) v /= b;
  return {std::move(grid), theta, b, std::move(f)};
}

PerturbedDensity build_f_theta(const Theta& theta, double A) {
  return build_f_theta(theta, std::make_shared<const LfGrid>(A));
}

IdentityCheck derivative_identity_check(const Theta& theta, double A, double gamma) {
  require(A > 0.0, Errc::invalid_argument, "A must be positive");
  // Keep the top frequency well inside 0.9 of the grid Nyquist (pi n / (2A)).
  std::size_t n = 64;
  while (static_cast<double>(n) < 4.0 * theta.max_abs_k() + 16.0) n *= 2;
  const Interval period{-A, A};
  const double dx = 2.0 * A / static_cast<double>(n);
  std::vector<double> g(n, 0.0);
  for (const ThetaTerm& t : theta.terms()) {
    const double w = t.k * kPi / A;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = -A + static_cast<double>(j) * dx;
      g[j] += t.value / std::sqrt(A) * (t.k > 0 ? std::cos(w * x) : std::sin(w * x));
    }
  }
  const GridFunction d = fractional_derivative(GridFunction(period, std::move(g)), gamma);
  // Plain Riemann sum: exact for trigonometric polynomials over a full period.
  double lhs = 0.0;
  for (double v : d.values()) lhs += v * v;
  lhs *= dx;
  const double rhs = theta.weighted_sq(A, gamma);
  const double gap = rhs > 0.0 ? std::abs(lhs - rhs) / rhs : std::abs(lhs);
  return {lhs, rhs, gap};
}

BoundCheck weighted_sum_bound_check(const Theta& theta, const ParameterSet& set, double l) {
  require(l > 0.0 && l < 2.0 * set.beta, Errc::invalid_argument, "need 0 < l < 2 beta");
  const double lhs = theta.weighted_sq(set.A, set.beta - 0.5 * l);
  const double rhs = (1.0 + 4.0 * set.L) * std::pow(set.A, 2.0 - l);
  return {lhs <= rhs, lhs, rhs};
}

}  // namespace fracsob
