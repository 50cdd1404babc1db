#include "fracsob/density_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsob/error.hpp"
#include "fracsob/fft.hpp"
#include "fracsob/parallel.hpp"
#include "fracsob/simd.hpp"

namespace fracsob {

DensitySampler::DensitySampler(const GridFunction& f)
    : support_(f.support()), step_(f.step()), values_(f.values().begin(), f.values().end()) {
  if (!f.is_density(1e-6)) {
    std::ostringstream msg;
    msg << "sampler needs a density (values >= 0, integral 1); integral is " << f.integral();
    throw Error(Errc::not_a_density, msg.str());
  }
  for (double& v : values_) v = std::max(v, 0.0);
  cumulative_.resize(values_.size() - 1);
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < values_.size(); ++j) {
    acc += std::max(values_[j], values_[j + 1]);
    cumulative_[j] = acc;
  }
}

double DensitySampler::draw(RngStream& rng) const {
  const double total = cumulative_.back();
  for (;;) {
    const double u = rng.uniform() * total;
    const auto cell = static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin());
    const std::size_t j = std::min(cell, cumulative_.size() - 1);
    const double t = rng.uniform();
    const double lo = values_[j], hi = values_[j + 1];
    const double target = (1.0 - t) * lo + t * hi;
    if (rng.uniform() * std::max(lo, hi) < target)
      return support_.lo + (static_cast<double>(j) + t) * step_;
  }
}

void DensitySampler::draw(std::span<double> out, RngStream& rng) const {
  for (double& v : out) v = draw(rng);
}

Sample rejection_sample(const GridFunction& f, std::size_t n, RngStream& rng) {
  DensitySampler sampler(f);
  Sample s{std::vector<double>(n), rng.master_seed(), rng.index()};
  sampler.draw(s.values, rng);
  return s;
}

Interval kde_kernel_support(Interval eval_support) {
  const double s = 2.0 * eval_support.length();
  return {-s, s};
}

KdeEngine::KdeEngine(const GridFunction& kernel, Interval eval_support, std::size_t eval_points)
    : eval_support_(eval_support), eval_points_(eval_points) {
  require(is_power_of_two(eval_points) && eval_points >= 2, Errc::invalid_grid,
          "evaluation grid size must be a power of two");
  set_kernel(kernel);
}

KdeEngine::KdeEngine(const KernelSpec& spec, Interval eval_support, std::size_t eval_points)
    : eval_support_(eval_support), eval_points_(eval_points) {
  require(is_power_of_two(eval_points) && eval_points >= 2, Errc::invalid_grid,
          "evaluation grid size must be a power of two");
  set_kernel(kernel_time_domain(spec, kde_kernel_support(eval_support), 4 * eval_points));
}

void KdeEngine::set_kernel(const GridFunction& kernel) {
  const double dx = eval_support_.length() / static_cast<double>(eval_points_);
  require(std::abs(kernel.step() - dx) <= 1e-12 * dx, Errc::invalid_grid,
          "kernel step must equal the evaluation grid step");
  const double offset = -kernel.support().lo / dx;  // index of x = 0 in the kernel grid
  const auto origin = static_cast<long long>(std::llround(offset));
  require(std::abs(offset - static_cast<double>(origin)) <= 1e-9, Errc::invalid_grid,
          "kernel grid must contain x = 0");

  const std::size_t p = 2 * eval_points_;
  const auto n = static_cast<long long>(eval_points_);
  kernel_spectrum_.assign(p, complex{});
  // Circular layout of K(d dx) for lags d in (-n, n) so a length-p circular convolution
  // of zero-padded bins equals the linear one.
  for (long long d = -n + 1; d < n; ++d) {
    const long long j = d + origin;
    if (j < 0 || j >= static_cast<long long>(kernel.size())) continue;
    kernel_spectrum_[static_cast<std::size_t>((d + static_cast<long long>(p)) % static_cast<long long>(p))] =
        kernel[static_cast<std::size_t>(j)];
  }
  fft::transform(kernel_spectrum_, fft::Direction::forward);
}

GridFunction KdeEngine::evaluate(std::span<const double> sample) const {
  require(!sample.empty(), Errc::invalid_argument, "KDE needs a non-empty sample");
  const std::size_t n = eval_points_;
  const double dx = eval_support_.length() / static_cast<double>(n);
  std::vector<complex> bins(2 * n);
  for (double x : sample) {
    const double t = (x - eval_support_.lo) / dx;
    if (!(t >= 0.0) || t > static_cast<double>(n - 1)) continue;
    const auto j = std::min(static_cast<std::size_t>(t), n - 2);
    const double u = t - static_cast<double>(j);
    bins[j] += 1.0 - u;
    bins[j + 1] += u;
  }
  fft::transform(bins, fft::Direction::forward);
  simd::kernels().multiply_complex(bins.data(), kernel_spectrum_.data(), bins.size());
  fft::transform(bins, fft::Direction::backward);

  const double scale = 1.0 / (static_cast<double>(bins.size()) * static_cast<double>(sample.size()));
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = bins[i].real() * scale;
  return GridFunction(eval_support_, std::move(out));
}

GridFunction kde_evaluate(const Sample& sample, const GridFunction& kernel, Interval eval_support,
                          std::size_t eval_points) {
  return KdeEngine(kernel, eval_support, eval_points).evaluate(sample.values);
}

GridFunction kde_evaluate_naive(const Sample& sample, const GridFunction& kernel,
                                Interval eval_support, std::size_t eval_points) {
  require(!sample.values.empty(), Errc::invalid_argument, "KDE needs a non-empty sample");
  GridFunction out = GridFunction::zeros(eval_support, eval_points);
  const double dx = out.step();
  require(std::abs(kernel.step() - dx) <= 1e-12 * dx, Errc::invalid_grid,
          "kernel step must equal the evaluation grid step");
  const auto& kt = simd::kernels();
  const auto m = static_cast<long long>(kernel.size());
  const auto n = static_cast<long long>(eval_points);
  const double w = 1.0 / static_cast<double>(sample.values.size());
  std::span<double> dst = out.values();
  for (double xs : sample.values) {
    // Kernel coordinate of x_i - xs is i + q with q = (eval.lo - xs - kernel.lo) / dx.
    const double q = (eval_support.lo - xs - kernel.support().lo) / dx;
    const double q0 = std::floor(q);
    const double r = q - q0;
    const auto shift = static_cast<long long>(q0);
    const long long i_begin = std::max<long long>(0, -shift);
    const long long i_end = std::min<long long>(n, m - 1 - shift);
    if (i_end <= i_begin) continue;
    kt.accumulate_lerp(dst.data() + i_begin, kernel.values().data() + i_begin + shift,
                       static_cast<std::size_t>(i_end - i_begin), r, w);
  }
  return out;
}

double integrated_squared_error(const GridFunction& estimate, const GridFunction& truth) {
  require(estimate.size() == truth.size() && estimate.support() == truth.support(),
          Errc::invalid_grid, "ISE needs functions on the same grid");
  const auto a = estimate.values();
  const auto b = truth.values();
  const double ends = 0.5 * ((a.front() - b.front()) * (a.front() - b.front()) +
                             (a.back() - b.back()) * (a.back() - b.back()));
  return estimate.step() * (simd::kernels().squared_distance(a.data(), b.data(), a.size()) - ends);
}

MiseTerms exact_mise_terms(const SpectralFunction& f_hat, std::span<const double> kernel_hat) {
  require(kernel_hat.size() == f_hat.size(), Errc::invalid_argument,
          "kernel transform must be sampled on the frequency grid of f_hat");
  const complex at_zero = f_hat[f_hat.zero_index()];
  require(std::abs(at_zero - 1.0) <= 1e-6, Errc::not_characteristic_function,
          "f_hat(0) must equal 1");
  double variance = 0.0, bias = 0.0;
  for (std::size_t k = 0; k < f_hat.size(); ++k) {
    const double power = std::norm(f_hat[k]);
    if (power > (1.0 + 1e-8) * (1.0 + 1e-8)) {
      std::ostringstream msg;
      msg << "|f_hat| = " << std::sqrt(power) << " > 1 at omega = " << f_hat.omega(k);
      throw Error(Errc::not_characteristic_function, msg.str());
    }
    const double K = kernel_hat[k];
    require(K >= 0.0 && K <= 1.0, Errc::invalid_argument, "kernel transform must lie in [0, 1]");
    variance += K * K * std::max(0.0, 1.0 - power);
    bias += (1.0 - K) * (1.0 - K) * power;
  }
  const double scale = f_hat.d_omega() / (2.0 * kPi);
  return {variance * scale, bias * scale};
}

double exact_mise(const SpectralFunction& f_hat, std::span<const double> kernel_hat, double n) {
  require(n > 0.0, Errc::invalid_argument, "sample size must be positive");
  return exact_mise_terms(f_hat, kernel_hat).at(n);
}

MiseEstimate monte_carlo_mise(const GridFunction& f, const SobolevClass& cls, std::size_t n,
                              std::size_t replications, std::uint64_t master_seed,
                              const MonteCarloOptions& options) {
  require(replications >= 2, Errc::invalid_argument, "need at least two replications");
  require(n >= 1, Errc::invalid_argument, "sample size must be >= 1");
  const DensitySampler sampler(f);
  const KdeEngine engine(KernelSpec::minimax(cls, static_cast<double>(n)), f.support(), f.size());

  std::vector<double> ise(replications);
  parallel_for(replications, options.workers, [&](std::size_t r) {
    RngStream rng(master_seed, r);
    std::vector<double> x(n);
    sampler.draw(x, rng);
    ise[r] = integrated_squared_error(engine.evaluate(x), f);
  });

  CompensatedSum sum;
  for (double v : ise) sum.add(v);
  const double mean = sum.value() / static_cast<double>(replications);
  CompensatedSum dev;
  for (double v : ise) dev.add((v - mean) * (v - mean));
  const double var = dev.value() / static_cast<double>(replications - 1);
  return {mean, std::sqrt(var / static_cast<double>(replications)), replications,
          static_cast<double>(n)};
}

double in_class_gaussian_sd(const SobolevClass& cls, double fill) {
  require(fill > 0.0, Errc::invalid_argument, "fill must be positive");
  const double b = cls.beta;
  return std::pow(std::tgamma(b + 0.5) / (2.0 * kPi * fill * cls.L), 1.0 / (2.0 * b + 1.0));
}

GridFunction gaussian_density(double sd, Interval support, std::size_t n_points) {
  require(sd > 0.0, Errc::invalid_argument, "sd must be positive");
  const double norm = 1.0 / (sd * std::sqrt(2.0 * kPi));
  return GridFunction::sample(support, n_points, [&](double x) {
    return norm * std::exp(-0.5 * (x / sd) * (x / sd));
  });
}

}  // namespace fracsob
