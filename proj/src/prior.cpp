#include "fracsob/prior.hpp"

#include <algorithm>
#include <cmath>

#include "fracsob/error.hpp"
#include "fracsob/minimax_kernel.hpp"
#include "fracsob/parallel.hpp"

namespace fracsob {
namespace {

template <class F>
double simpson(F&& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

constexpr int kPanels = 8192;

double raw_variance(double s, double G) {
  auto rho = [&](double t) {
    const double c = std::cos(kPi * t / (2.0 * G));
    return std::exp(-0.5 * t * t / (s * s)) * c * c;
  };
  const double z = simpson(rho, -G, G, kPanels);
  return simpson([&](double t) { return t * t * rho(t); }, -G, G, kPanels) / z;
}

}  // namespace

XiLaw::XiLaw(double G) : G_(G), s_(1.0), norm_(1.0) {
  require(std::isfinite(G) && G > 1.0, Errc::invalid_argument, "xi bound G must exceed 1");
  // Variance is increasing in s; bisect for unit variance.
  double lo = 0.5, hi = 4.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (lo + hi);
    (raw_variance(mid, G) < 1.0 ? lo : hi) = mid;
  }
  s_ = 0.5 * (lo + hi);
  norm_ = 1.0 / simpson([this](double t) { return unnormalized(t); }, -G_, G_, kPanels);
}

double XiLaw::unnormalized(double t) const noexcept {
  if (!(std::abs(t) < G_)) return 0.0;
  const double c = std::cos(kPi * t / (2.0 * G_));
  return std::exp(-0.5 * t * t / (s_ * s_)) * c * c;
}

double XiLaw::density(double t) const noexcept { return norm_ * unnormalized(t); }

double XiLaw::variance() const {
  return simpson([this](double t) { return t * t * density(t); }, -G_, G_, kPanels);
}

double XiLaw::fisher_information() const {
  // rho' / sqrt(rho) = sqrt(g) (-(t/s^2) cos u - (pi/G) sin u), u = pi t / 2G, g the Gaussian factor.
  return simpson(
      [this](double t) {
        const double u = kPi * t / (2.0 * G_);
        const double g = norm_ * std::exp(-0.5 * t * t / (s_ * s_));
        const double q = -(t / (s_ * s_)) * std::cos(u) - (kPi / G_) * std::sin(u);
        return g * q * q;
      },
      -G_, G_, kPanels);
}

double XiLaw::sample(RngStream& rng) const {
  for (;;) {
    const double t = s_ * rng.normal();
    if (!(std::abs(t) < G_)) continue;
    const double c = std::cos(kPi * t / (2.0 * G_));
    if (rng.uniform() < c * c) return t;
  }
}

double PriorSpec::sigma_sq(int k) const noexcept {
  if (k == 0) return 0.0;
  const double factor = convention == VarianceConvention::two_a ? 2.0 : 4.0;
  const double r = std::pow(W / std::abs(static_cast<double>(k)), beta) - 1.0;
  return r > 0.0 ? factor * A / n * r : 0.0;
}

int PriorSpec::k_limit() const noexcept {
  if (W <= 1.0) return 0;
  auto k = static_cast<int>(std::ceil(W)) - 1;
  while (k > 0 && sigma_sq(k) <= 0.0) --k;
  return k;
}

PriorSpec prior_spec(double beta, double L, double n, double eps, double A,
                     VarianceConvention convention) {
  require(eps > 0.0 && eps < 1.0, Errc::invalid_argument, "eps must lie in (0, 1)");
  require(beta > 0.5, Errc::invalid_argument, "lower-bound routines need beta > 1/2");
  require(L > 0.0 && n >= 1.0 && A > 0.0, Errc::invalid_argument, "need L > 0, n >= 1, A > 0");
  const double b = beta;
  const double W = A / kPi * std::pow(L * (1.0 - eps) * n * (2.0 * b + 1.0) * (b + 1.0) * kPi / b,
                                      1.0 / (2.0 * b + 1.0));
  static const XiLaw xi;
  return {beta, L, n, eps, A, W, xi.G(), convention, xi};
}

Theta prior_sample(const PriorSpec& spec, RngStream& rng) {
  const int K = spec.k_limit();
  std::vector<ThetaTerm> terms;
  terms.reserve(2 * static_cast<std::size_t>(K));
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    terms.push_back({k, std::sqrt(spec.sigma_sq(k)) * spec.xi.sample(rng)});
  }
  return Theta(std::move(terms));
}

double van_trees_bound(const PriorSpec& spec) {
  const int K = spec.k_limit();
  CompensatedSum sum;
  for (int k = 1; k <= K; ++k) {
    const double term = 1.0 / (spec.n + 2.0 * spec.A / spec.sigma_sq(k));
    sum.add(2.0 * term);  // k and -k share sigma_k
  }
  return sum.value() / (2.0 * spec.A * (1.0 + spec.eps));
}

double van_trees_closed_form(double beta, double L, double n, double eps) {
  require(eps > 0.0 && eps < 1.0, Errc::invalid_argument, "eps must lie in (0, 1)");
  const double e = 1.0 / (2.0 * beta + 1.0);
  return std::pow(n, -2.0 * beta * e) * pinsker_constant({beta, L}) * std::pow(1.0 - eps, e) /
         (1.0 + eps);
}

double schedule_A(double n) { return std::max(4.0, std::ceil(std::log(n))); }

WilsonInterval wilson_interval(std::size_t failures, std::size_t trials, double z) {
  require(trials > 0, Errc::invalid_argument, "Wilson interval needs trials > 0");
  const double m = static_cast<double>(trials);
  const double p = static_cast<double>(failures) / m;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * m)) / (1.0 + z2 / m);
  const double half = z / (1.0 + z2 / m) * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

TailProbability prior_tail_probability(const PriorSpec& spec, const ParameterSet& set,
                                        std::size_t trials, std::uint64_t master_seed,
                                        unsigned workers) {
  require(trials >= 1000, Errc::invalid_argument, "tail audit needs at least 1000 trials");
  std::vector<ThetaMembership> results(trials);
  parallel_for(trials, workers, [&](std::size_t t) {
    RngStream rng(master_seed, t);
    results[t] = theta_membership(prior_sample(spec, rng), set);
  });

  TailProbability out;
  out.trials = trials;
  CompensatedSum l1, quad;
  for (const ThetaMembership& m : results) {
    out.failures += m.member ? 0 : 1;
    out.l1_failures += m.l1_margin < 0.0 ? 1 : 0;
    out.quad_failures += m.quad_margin < 0.0 ? 1 : 0;
    l1.add(m.l1);
    quad.add(m.quad);
  }
  out.frequency = static_cast<double>(out.failures) / static_cast<double>(trials);
  out.ci = wilson_interval(out.failures, trials);
  out.mean_l1 = l1.value() / static_cast<double>(trials);
  out.mean_quad = quad.value() / static_cast<double>(trials);
  return out;
}

}  // namespace fracsob
