#pragma once

// Trigonometric perturbations of the plateau density and the coefficient set they range over.

#include <memory>
#include <span>
#include <vector>

#include "fracsob/bump.hpp"
#include "fracsob/spectral.hpp"

namespace fracsob {

struct ThetaTerm {
  int k;
  double value;
  bool operator==(const ThetaTerm&) const = default;
};

/// Finitely supported coefficients theta_k, k != 0, kept sorted by k with no zeros.
class Theta {
 public:
  Theta() = default;
  explicit Theta(std::vector<ThetaTerm> terms);

  void set(int k, double value);
  double get(int k) const noexcept;
  std::span<const ThetaTerm> terms() const noexcept { return terms_; }
  std::size_t nnz() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  int max_abs_k() const noexcept;

  double l1() const noexcept;
  /// sum theta_k^2 (k pi / A)^{2 gamma}.
  double weighted_sq(double A, double gamma) const noexcept;

  bool operator==(const Theta&) const = default;

 private:
  std::vector<ThetaTerm> terms_;
};

/// The coefficient set: sum |theta_k| <= A^{1 - 2 beta} and sum theta_k^2 (k pi/A)^{2 beta} <= 4 A^2 L.
struct ParameterSet {
  double A;
  double beta;
  double L;

  double l1_budget() const;
  double quad_budget() const;
};

struct ThetaMembership {
  bool member;
  double l1;
  double quad;
  double l1_margin;
  double quad_margin;
};

ThetaMembership theta_membership(const Theta& theta, const ParameterSet& set);

/// f_theta = plateau (1 + sum theta_k phi_k) / b(theta) on the grid of `grid`.
struct PerturbedDensity {
  std::shared_ptr<const LfGrid> grid;
  Theta theta;
  double b = 1.0;
  GridFunction density;

  double A() const noexcept { return grid->A(); }
  /// |b - 1| <= A^{-3/2}.
  bool normalizer_in_bracket() const noexcept;
};

/// Throws Errc::invalid_density when 1 + sum theta_k phi_k is not positive on [-A, A).
PerturbedDensity build_f_theta(const Theta& theta, std::shared_ptr<const LfGrid> grid);
PerturbedDensity build_f_theta(const Theta& theta, double A);

struct IdentityCheck {
  double lhs;  // ||(sum theta_k phi_k)^{(gamma)}||^2 computed spectrally
  double rhs;  // sum theta_k^2 (k pi / A)^{2 gamma}
  double relative_gap;
};

/// Norm identity on the periodic grid [-A, A); the grid is sized to the largest |k|.
IdentityCheck derivative_identity_check(const Theta& theta, double A, double gamma);

struct BoundCheck {
  bool holds;
  double lhs;  // sum theta_k^2 (k pi/A)^{2 beta - l}
  double rhs;  // (1 + 4L) A^{2 - l}
};

/// Requires 0 < l < 2 beta.
BoundCheck weighted_sum_bound_check(const Theta& theta, const ParameterSet& set, double l);

}  // namespace fracsob
