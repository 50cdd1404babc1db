#include "fracsob/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracsob/error.hpp"
#include "fracsob/fft.hpp"
#include "fracsob/simd.hpp"

namespace fracsob {
namespace {

// exp(i * 2pi * m * ratio), reduced to the unit period first so large m keep full accuracy.
complex unit_phase(long long m, double ratio) {
  double t = static_cast<double>(m) * ratio;
  t -= std::floor(t);
  return std::polar(1.0, 2.0 * kPi * t);
}

long long modulo(long long m, long long n) {
  const long long r = m % n;
  return r < 0 ? r + n : r;
}

// |w|^{2 beta} on the grid with the zero bin left out; seminorm_cusp_correction accounts for it.
std::vector<double> seminorm_weights(const SpectralFunction& F, double beta) {
  std::vector<double> w(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) w[k] = std::pow(std::abs(F.omega(k)), 2.0 * beta);
  w[F.zero_index()] = 0.0;
  return w;
}

void check_tail(const SpectralFunction& F, double gamma, const SpectralOptions& options) {
  const double share = tail_energy_fraction(F, gamma, options.tail_band);
  if (share > options.tail_tolerance) {
    std::ostringstream msg;
    msg << "spectral tail above " << options.tail_band << "*omega_max carries " << share
        << " of the |w|^" << 2.0 * gamma << " weighted energy (limit " << options.tail_tolerance
        << "); refine the grid to raise omega_max";
    throw Error(Errc::tail_check_failed, msg.str());
  }
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(Interval support, std::vector<double> values)
    : support_(support), values_(std::move(values)) {
  require(values_.size() >= 2 && is_power_of_two(values_.size()), Errc::invalid_grid,
          "grid size must be a power of two >= 2, got " + std::to_string(values_.size()));
  require(std::isfinite(support_.lo) && std::isfinite(support_.hi) && support_.lo < support_.hi,
          Errc::invalid_grid, "support must be a finite interval with lo < hi");
  for (double v : values_) require(std::isfinite(v), Errc::invalid_grid, "non-finite grid value");
}

GridFunction GridFunction::zeros(Interval support, std::size_t n_points) {
  return GridFunction(support, std::vector<double>(n_points, 0.0));
}

GridFunction GridFunction::sample(Interval support, std::size_t n_points,
                                  const std::function<double(double)>& f) {
  require(n_points >= 2 && is_power_of_two(n_points), Errc::invalid_grid,
          "grid size must be a power of two >= 2");
  const double dx = support.length() / static_cast<double>(n_points);
  std::vector<double> v(n_points);
  for (std::size_t j = 0; j < n_points; ++j) v[j] = f(support.lo + static_cast<double>(j) * dx);
  return GridFunction(support, std::move(v));
}

double GridFunction::at(double x) const noexcept {
  const double t = (x - support_.lo) / step();
  if (!(t >= 0.0)) return 0.0;
  const auto j = static_cast<std::size_t>(t);
  if (j + 1 >= values_.size()) return j + 1 == values_.size() && t == static_cast<double>(j) ? values_[j] : 0.0;
  const double u = t - static_cast<double>(j);
  return (1.0 - u) * values_[j] + u * values_[j + 1];
}

double GridFunction::integral() const noexcept {
  const double s = simd::kernels().sum(values_.data(), values_.size());
  return step() * (s - 0.5 * (values_.front() + values_.back()));
}

double GridFunction::l2_norm_sq() const noexcept {
  const double s = simd::kernels().dot(values_.data(), values_.data(), values_.size());
  const double ends = 0.5 * (values_.front() * values_.front() + values_.back() * values_.back());
  return step() * (s - ends);
}

double GridFunction::max_value() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

bool GridFunction::is_density(double tol) const noexcept {
  for (double v : values_)
    if (v < -1e-12) return false;
  return std::abs(integral() - 1.0) <= tol;
}

SpectralFunction::SpectralFunction(double d_omega, std::vector<complex> values)
    : d_omega_(d_omega), values_(std::move(values)) {
  require(values_.size() >= 2 && is_power_of_two(values_.size()), Errc::invalid_grid,
          "spectral grid size must be a power of two >= 2");
  require(std::isfinite(d_omega_) && d_omega_ > 0.0, Errc::invalid_grid,
          "frequency spacing must be positive");
}

double SpectralFunction::hermitian_defect() const noexcept {
  const std::size_t m = values_.size();
  double defect = 0.0;
  for (std::size_t k = 1; k < m; ++k)
    defect = std::max(defect, std::abs(values_[k] - std::conj(values_[m - k])));
  return defect;
}

double SpectralFunction::weighted_energy(const std::function<double(double)>& weight) const {
  double s = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) s += weight(omega(k)) * std::norm(values_[k]);
  return s * d_omega_ / (2.0 * kPi);
}

SpectralFunction forward_transform(const GridFunction& f, double omega_max) {
  require(std::isfinite(omega_max) && omega_max > 0.0, Errc::invalid_argument,
          "omega_max must be positive");
  const std::size_t n = f.size();
  const double length = f.support().length();
  const double d_omega = 2.0 * kPi / length;

  std::size_t m_points = 2;
  while (static_cast<double>(m_points / 2) * d_omega < omega_max * (1.0 - 1e-12)) m_points *= 2;

  std::vector<complex> g(f.values().begin(), f.values().end());
  fft::transform(g, fft::Direction::backward);

  const double ratio = f.support().lo / length;
  const auto half_n = static_cast<long long>(n / 2);
  const auto half_m = static_cast<long long>(m_points / 2);
  std::vector<complex> out(m_points);
  for (std::size_t k = 0; k < m_points; ++k) {
    const long long m = static_cast<long long>(k) - half_m;
    if (m <= -half_n || m >= half_n) continue;
    out[k] = f.step() * unit_phase(m, ratio) * g[static_cast<std::size_t>(modulo(m, static_cast<long long>(n)))];
  }
  return SpectralFunction(d_omega, std::move(out));
}

SpectralFunction forward_transform(const GridFunction& f) {
  return forward_transform(f, kPi / f.step());
}

GridFunction inverse_transform(const SpectralFunction& F, Interval support, std::size_t n_points,
                               const SpectralOptions& options) {
  require(n_points >= 2 && is_power_of_two(n_points), Errc::invalid_grid,
          "grid size must be a power of two >= 2");
  require(support.lo < support.hi, Errc::invalid_grid, "support must have lo < hi");
  double peak = 0.0;
  for (const complex& v : F.values()) peak = std::max(peak, std::abs(v));
  const double defect = F.hermitian_defect();
  if (defect > options.hermitian_tolerance * std::max(1.0, peak)) {
    std::ostringstream msg;
    msg << "spectrum violates Hermitian symmetry by " << defect
        << "; its inverse transform would be complex";
    throw Error(Errc::not_hermitian, msg.str());
  }

  const double length = support.length();
  const double scale = F.d_omega() / (2.0 * kPi);
  const auto half_m = static_cast<long long>(F.size() / 2);
  std::vector<double> out(n_points);

  if (std::abs(length * F.d_omega() - 2.0 * kPi) <= 1e-12 * 2.0 * kPi) {
    const double ratio = support.lo / length;
    std::vector<complex> bins(n_points);
    for (std::size_t k = 0; k < F.size(); ++k) {
      if (F[k] == complex{}) continue;
      const long long m = static_cast<long long>(k) - half_m;
      bins[static_cast<std::size_t>(modulo(m, static_cast<long long>(n_points)))] +=
          F[k] * std::conj(unit_phase(m, ratio));
    }
    fft::transform(bins, fft::Direction::forward);
    for (std::size_t j = 0; j < n_points; ++j) out[j] = scale * bins[j].real();
  } else {
    const double dx = length / static_cast<double>(n_points);
    for (std::size_t j = 0; j < n_points; ++j) {
      const double x = support.lo + static_cast<double>(j) * dx;
      double s = 0.0;
      for (std::size_t k = 0; k < F.size(); ++k) {
        const double phase = F.omega(k) * x;
        s += F[k].real() * std::cos(phase) + F[k].imag() * std::sin(phase);
      }
      out[j] = scale * s;
    }
  }
  return GridFunction(support, std::move(out));
}

complex derivative_multiplier(double omega, double gamma) noexcept {
  if (gamma == 0.0) return 1.0;
  if (omega == 0.0) return 0.0;
  const double sign = omega > 0.0 ? 1.0 : -1.0;
  return std::polar(std::pow(std::abs(omega), gamma), -sign * gamma * kPi / 2.0);
}

double tail_energy_fraction(const SpectralFunction& F, double gamma, double band) {
  const double cut = band * F.omega_max();
  double total = 0.0;
  double tail = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double w = std::abs(F.omega(k));
    const double weight = gamma == 0.0 ? 1.0 : std::pow(w, 2.0 * gamma);
    const double e = weight * std::norm(F[k]);
    total += e;
    if (w > cut) tail += e;
  }
  return total > 0.0 ? tail / total : 0.0;
}

GridFunction fractional_derivative(const GridFunction& f, double gamma,
                                   const SpectralOptions& options) {
  require(gamma >= 0.0 && std::isfinite(gamma), Errc::invalid_argument,
          "derivative order must be finite and >= 0");
  if (gamma == 0.0) return f;
  SpectralFunction F = forward_transform(f);
  check_tail(F, gamma, options);
  std::vector<complex> m(F.size());
  for (std::size_t k = 0; k < F.size(); ++k) m[k] = derivative_multiplier(F.omega(k), gamma);
  simd::kernels().multiply_complex(F.values().data(), m.data(), F.size());
  return inverse_transform(F, f.support(), f.size(), options);
}

double sobolev_seminorm_sq(const SpectralFunction& F, double beta, const SpectralOptions& options) {
  require(beta > -0.5 && std::isfinite(beta), Errc::invalid_argument,
          "seminorm order must be finite and > -1/2");
  if (beta >= 0.0) check_tail(F, beta, options);
  const std::vector<double> w = seminorm_weights(F, beta);
  const double s = simd::kernels().weighted_power(F.values().data(), w.data(), F.size());
  return s * F.d_omega() / (2.0 * kPi) - seminorm_cusp_correction(F, beta);
}

double seminorm_cusp_correction(const SpectralFunction& F, double beta) {
  const std::size_t z = F.zero_index();
  const double dw = F.d_omega();
  const double g0 = std::norm(F[z]);
  // |F|^2 is even for real f, so the centred second difference is its curvature at 0.
  const double g2 = z + 1 < F.size() ? (std::norm(F[z + 1]) + std::norm(F[z - 1]) - 2.0 * g0) / (dw * dw)
                                     : 0.0;
  const double s = 2.0 * beta;
  const double c0 = std::riemann_zeta(-s) * g0 * std::pow(dw, s + 1.0);
  const double c1 = std::riemann_zeta(-s - 2.0) * 0.5 * g2 * std::pow(dw, s + 3.0);
  return 2.0 * (c0 + c1) / (2.0 * kPi);
}

double sobolev_seminorm_sq(const GridFunction& f, double beta, const SpectralOptions& options) {
  return sobolev_seminorm_sq(forward_transform(f), beta, options);
}

Membership class_membership(const GridFunction& f, const SobolevClass& cls,
                            const SpectralOptions& options) {
  require(cls.beta > 0.0 && cls.L > 0.0, Errc::invalid_argument, "class needs beta > 0 and L > 0");
  const double s = sobolev_seminorm_sq(f, cls.beta, options);
  return {s <= cls.L, cls.L - s, s};
}

}  // namespace fracsob
