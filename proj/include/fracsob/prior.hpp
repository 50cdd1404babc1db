#pragma once

// Product prior on the perturbation coefficients and the van Trees lower bound.

#include <cstdint>
#include <vector>

#include "fracsob/perturbed.hpp"
#include "fracsob/rng.hpp"

namespace fracsob {

/// Base law for xi_k: density proportional to exp(-t^2 / 2 s^2) cos^2(pi t / 2G) on [-G, G],
/// with s chosen for unit variance. Smooth, bounded, zero mean, Fisher information near 1.
class XiLaw {
 public:
  explicit XiLaw(double G = 6.0);

  double G() const noexcept { return G_; }
  double s() const noexcept { return s_; }
  double density(double t) const noexcept;
  double variance() const;
  /// int rho'^2 / rho by quadrature.
  double fisher_information() const;
  double sample(RngStream& rng) const;

 private:
  double unnormalized(double t) const noexcept;
  double G_;
  double s_;
  double norm_;
};

/// Prior variance profile: `two_a` uses 2A/n (the maximizer of the van Trees sum under the
/// quadratic budget), `four_a` uses 4A/n.
enum class VarianceConvention { two_a, four_a };

struct PriorSpec {
  double beta, L, n, eps, A;
  double W;
  double G;
  VarianceConvention convention;
  XiLaw xi;

  /// (c A / n)(|W/k|^beta - 1)_+ with c = 2 or 4 by convention.
  double sigma_sq(int k) const noexcept;
  /// Largest |k| with sigma_k^2 > 0 (0 when W <= 1).
  int k_limit() const noexcept;
};

PriorSpec prior_spec(double beta, double L, double n, double eps, double A,
                     VarianceConvention convention = VarianceConvention::two_a);

/// theta_k = sigma_k xi_k for 0 < |k| < W, drawn in the order -K..-1, 1..K.
Theta prior_sample(const PriorSpec& spec, RngStream& rng);

/// (1 / (2A(1 + eps))) sum_{0<|k|<W} 1 / (n + 2A / sigma_k^2).
double van_trees_bound(const PriorSpec& spec);
/// n^{-2b/(2b+1)} gamma(beta, L) (1 - eps)^{1/(2b+1)} / (1 + eps).
double van_trees_closed_form(double beta, double L, double n, double eps);

/// A = max(4, ceil(ln n)).
double schedule_A(double n);

struct WilsonInterval {
  double lo, hi;
};
WilsonInterval wilson_interval(std::size_t failures, std::size_t trials, double z = 1.959963984540054);

struct TailProbability {
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::size_t l1_failures = 0;
  std::size_t quad_failures = 0;
  double frequency = 0.0;
  WilsonInterval ci{0.0, 0.0};
  double mean_l1 = 0.0;
  double mean_quad = 0.0;
};

/// Monte Carlo frequency of prior draws outside the coefficient set. Trial t uses
/// RngStream(master_seed, t).
TailProbability prior_tail_probability(const PriorSpec& spec, const ParameterSet& set,
                                        std::size_t trials, std::uint64_t master_seed,
                                        unsigned workers = 0);

}  // namespace fracsob
