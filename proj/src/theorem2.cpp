#include "fracsob/theorem2.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "fracsob/error.hpp"
#include "fracsob/parallel.hpp"
#include "fracsob/rng.hpp"
#include "fracsob/simd.hpp"

namespace fracsob {
namespace {

// Largest k with theta^2 (k pi / A)^{2 beta} <= budget for a single coefficient of size theta.
int top_frequency(double theta, double budget, const ParameterSet& set) {
  return static_cast<int>(std::floor(set.A / kPi * std::pow(budget / (theta * theta), 0.5 / set.beta)));
}

// Scale theta onto the boundary of the coefficient set.
Theta to_boundary(Theta theta, const ParameterSet& set) {
  if (theta.empty()) return theta;
  const double l1 = theta.l1();
  const double quad = theta.weighted_sq(set.A, set.beta);
  const double lambda = std::min(set.l1_budget() / l1, std::sqrt(set.quad_budget() / quad));
  std::vector<ThetaTerm> scaled(theta.terms().begin(), theta.terms().end());
  for (ThetaTerm& t : scaled) t.value *= lambda;
  return Theta(std::move(scaled));
}

bool better(const ProbeResult& a, const ProbeResult& b) {
  if (a.seminorm_sq != b.seminorm_sq) return a.seminorm_sq > b.seminorm_sq;
  const int ka = std::max(std::abs(a.k_min), std::abs(a.k_max));
  const int kb = std::max(std::abs(b.k_min), std::abs(b.k_max));
  if (ka != kb) return ka < kb;
  if ((a.k_max > 0) != (b.k_max > 0)) return a.k_max > 0;
  return a.index < b.index;
}

// Seminorm evaluation with the |w|^{2 beta} weights computed once per grid.
class SeminormEvaluator {
 public:
  SeminormEvaluator(const SpectralFunction& layout, double beta, const SpectralOptions& options)
      : weights_(layout.size()), tail_weights_(layout.size()), d_omega_(layout.d_omega()),
        beta_(beta), tolerance_(options.tail_tolerance) {
    const double cut = options.tail_band * layout.omega_max();
    for (std::size_t k = 0; k < layout.size(); ++k) {
      const double w = std::abs(layout.omega(k));
      weights_[k] = w == 0.0 ? 0.0 : std::pow(w, 2.0 * beta);
      tail_weights_[k] = w > cut ? weights_[k] : 0.0;
    }
  }

  double operator()(const SpectralFunction& F) const {
    const auto& kt = simd::kernels();
    const double total = kt.weighted_power(F.values().data(), weights_.data(), F.size());
    const double tail = kt.weighted_power(F.values().data(), tail_weights_.data(), F.size());
    if (total > 0.0 && tail / total > tolerance_) {
      std::ostringstream msg;
      msg << "probe spectrum tail share " << tail / total << " exceeds " << tolerance_
          << "; the grid is too coarse for the probed frequencies";
      throw Error(Errc::tail_check_failed, msg.str());
    }
    return total * d_omega_ / (2.0 * kPi) - seminorm_cusp_correction(F, beta_);
  }

 private:
  std::vector<double> weights_, tail_weights_;
  double d_omega_;
  double beta_;
  double tolerance_;
};

}  // namespace

int extremal_frequency(const ParameterSet& set) {
  require(set.beta > 0.5, Errc::invalid_argument, "lower-bound routines need beta > 1/2");
  return std::max(1, top_frequency(set.l1_budget(), set.quad_budget(), set));
}

std::vector<std::pair<ProbeKind, Theta>> theorem2_probes(const ParameterSet& set,
                                                         const Theorem2Options& options) {
  const double t = set.l1_budget();
  const double Q = set.quad_budget();
  const int k_ext = extremal_frequency(set);
  const int k_cap = std::max(k_ext, static_cast<int>(std::floor(options.k_cap_factor * k_ext)));

  std::vector<std::pair<ProbeKind, Theta>> probes;
  auto add = [&](ProbeKind kind, std::vector<ThetaTerm> terms) {
    if (probes.size() < options.budget) probes.emplace_back(kind, to_boundary(Theta(std::move(terms)), set));
  };

  add(ProbeKind::zero, {});
  for (int d = 0; d < 3 && k_ext - d >= 1; ++d) {
    add(ProbeKind::single, {{k_ext - d, t}});
    add(ProbeKind::single, {{-(k_ext - d), t}});
  }
  const int k_pair = std::clamp(top_frequency(t / 2.0, Q / 2.0, set), 1, k_cap);
  add(ProbeKind::pair, {{k_pair, t / 2.0}, {-k_pair, t / 2.0}});
  if (k_pair > 1) add(ProbeKind::pair, {{k_pair - 1, t / 2.0}, {k_pair, t / 2.0}});
  for (int m : {4, 16, 64}) {
    const int top = std::clamp(top_frequency(t / m, Q / m, set), m, std::max(m, k_cap));
    std::vector<ThetaTerm> band;
    for (int k = top - m + 1; k <= top; ++k) band.push_back({k, t / m});
    add(ProbeKind::band, std::move(band));
  }

  RngStream rng(options.seed, static_cast<std::uint64_t>(std::llround(set.A * 1000.0)));
  std::uniform_int_distribution<int> support_size(1, 8);
  std::uniform_int_distribution<int> anywhere(1, k_cap);
  std::uniform_int_distribution<int> near_top(std::max(1, (4 * k_ext) / 5), k_cap);
  while (probes.size() < options.budget) {
    std::vector<ThetaTerm> terms;
    const int s = support_size(rng);
    for (int i = 0; i < s; ++i) {
      const int k = rng.uniform() < 0.5 ? anywhere(rng) : near_top(rng);
      terms.push_back({rng.uniform() < 0.5 ? k : -k, rng.normal()});
    }
    Theta theta(std::move(terms));
    if (theta.empty()) continue;
    std::vector<ThetaTerm> kept(theta.terms().begin(), theta.terms().end());
    add(ProbeKind::random, std::move(kept));
  }
  return probes;
}

std::size_t theorem2_grid_points(double A, double omega_top, std::size_t min_points) {
  // Nyquist of [-4A, 4A) with n points is pi n / (8A).
  const double needed = 8.0 * A * (omega_top + 60.0) / (0.9 * kPi);
  std::size_t n = std::max<std::size_t>(min_points, 16);
  while (static_cast<double>(n) < needed) n *= 2;
  return n;
}

double bump_seminorm_sq(double order) {
  const GridFunction f0 = BumpDensity(1.0).on_grid(symmetric(32.0), std::size_t{1} << 16);
  return sobolev_seminorm_sq(f0, order);
}

std::vector<Theorem2Row> theorem2_sweep(double beta, double L, const std::vector<double>& A_list,
                                        const Theorem2Options& options) {
  require(beta > 0.5, Errc::invalid_argument, "lower-bound routines need beta > 1/2");
  require(options.budget >= 1, Errc::invalid_argument, "probe budget must be >= 1");
  const double f0_norm = bump_seminorm_sq(beta - 1.0);

  std::vector<Theorem2Row> rows;
  for (double A : A_list) {
    const ParameterSet set{A, beta, L};
    Theorem2Row row;
    row.A = A;
    row.extremal_k = extremal_frequency(set);
    const auto probes = theorem2_probes(set, options);
    int k_top = 1;
    for (const auto& p : probes) k_top = std::max(k_top, p.second.max_abs_k());
    row.grid_points = theorem2_grid_points(A, k_top * kPi / A, options.min_grid_points);

    const auto grid = std::make_shared<const LfGrid>(A, row.grid_points);
    const SeminormEvaluator seminorm(forward_transform(grid->plateau()), beta, SpectralOptions{});

    row.probes.resize(probes.size());
    parallel_for(probes.size(), options.workers, [&](std::size_t i) {
      const Theta& theta = probes[i].second;
      const PerturbedDensity pd = build_f_theta(theta, grid);
      ProbeResult r;
      r.index = i;
      r.kind = probes[i].first;
      r.nnz = theta.nnz();
      r.k_min = theta.empty() ? 0 : theta.terms().front().k;
      r.k_max = theta.empty() ? 0 : theta.terms().back().k;
      r.l1 = theta.l1();
      r.quad = theta.weighted_sq(A, beta);
      r.seminorm_sq = seminorm(forward_transform(pd.density));
      row.probes[i] = r;
    });

    row.best = row.probes.front();
    for (const ProbeResult& r : row.probes)
      if (better(r, row.best)) row.best = r;
    row.theta0_seminorm_sq = row.probes.front().seminorm_sq;
    row.theta0_bound = f0_norm / ((A - 0.5) * (A - 0.5));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fracsob
