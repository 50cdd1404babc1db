#pragma once

// Certified lower bounds on sup over the coefficient set of ||f_theta^{(beta)}||^2.

#include <cstdint>
#include <vector>

#include "fracsob/perturbed.hpp"

namespace fracsob {

enum class ProbeKind : int { zero = 0, single = 1, pair = 2, band = 3, random = 4 };

struct ProbeResult {
  std::size_t index = 0;
  ProbeKind kind = ProbeKind::zero;
  int k_min = 0;
  int k_max = 0;
  std::size_t nnz = 0;
  double l1 = 0.0;
  double quad = 0.0;
  double seminorm_sq = 0.0;
};

struct Theorem2Options {
  std::size_t budget = 1000;   // total probes per A, deterministic ones included
  std::uint64_t seed = 1;
  unsigned workers = 0;
  double k_cap_factor = 1.1;   // probes use |k| <= k_cap_factor * extremal_k
  std::size_t min_grid_points = std::size_t{1} << 14;
};

struct Theorem2Row {
  double A = 0.0;
  std::size_t grid_points = 0;
  int extremal_k = 0;
  std::vector<ProbeResult> probes;
  ProbeResult best;
  double theta0_seminorm_sq = 0.0;
  /// (A - 1/2)^{-2} ||f0^{(beta - 1)}||^2.
  double theta0_bound = 0.0;
};

/// Largest k whose single-term theta at the l1 budget still meets the quadratic budget.
int extremal_frequency(const ParameterSet& set);

/// The deterministic and random probe list for one A (without evaluating them).
std::vector<std::pair<ProbeKind, Theta>> theorem2_probes(const ParameterSet& set,
                                                         const Theorem2Options& options);

/// Smallest power-of-two grid on [-4A, 4A) whose 0.9 Nyquist clears frequency `omega_top` + 60.
std::size_t theorem2_grid_points(double A, double omega_top, std::size_t min_points);

/// ||f0^{(beta - 1)}||^2 on a fine grid; beta - 1 may be negative (> -1/2).
double bump_seminorm_sq(double order);

/// Probes are evaluated in parallel; the best probe is the maximum seminorm with ties broken
/// toward smaller max |k|, then positive k, then the earlier probe.
std::vector<Theorem2Row> theorem2_sweep(double beta, double L, const std::vector<double>& A_list,
                                        const Theorem2Options& options = {});

}  // namespace fracsob
