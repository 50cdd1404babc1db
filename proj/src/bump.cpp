#include "fracsob/bump.hpp"

#include <algorithm>
#include <cmath>

#include "fracsob/error.hpp"
#include "fracsob/simd.hpp"

namespace fracsob {
namespace {

// Composite Simpson on [lo, hi] with `panels` (even) subintervals.
template <class F>
double simpson(F&& f, double lo, double hi, int panels) {
  const double h = (hi - lo) / panels;
  double s = f(lo) + f(hi);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

Interval lf_support(double A) {
  require(std::isfinite(A) && A >= 2.0, Errc::invalid_argument, "half-support A must be >= 2");
  return {-LfGrid::kPad * A, LfGrid::kPad * A};
}

double bump_cdf(double x, const BumpDensity& bump) {
  if (x <= -0.5) return 0.0;
  if (x >= 0.5) return 1.0;
  return simpson([&](double t) { return bump(t); }, -0.5, x, 2048);
}

}  // namespace

double bump_kernel(double x, double a) noexcept {
  if (!(x > -0.5 && x < 0.5)) return 0.0;
  return std::exp(-a / ((x + 0.5) * (0.5 - x)));
}

double bump_normalizer(double a) {
  require(std::isfinite(a) && a > 0.0, Errc::invalid_argument, "bump shape a must be > 0");
  return simpson([a](double x) { return bump_kernel(x, a); }, -0.5, 0.5, 1 << 16);
}

BumpDensity::BumpDensity(double a_) : a(a_), c_a(bump_normalizer(a_)) {}

GridFunction BumpDensity::on_grid(Interval support, std::size_t n_points) const {
  GridFunction f = GridFunction::sample(support, n_points, [this](double x) { return (*this)(x); });
  const double mass = f.integral();
  require(mass > 0.0, Errc::invalid_grid, "grid does not resolve the bump");
  for (double& v : f.values()) v /= mass;
  return f;
}

double calibration_integral(double a, std::size_t n_points, double half_width) {
  const GridFunction f0 = BumpDensity(a).on_grid(symmetric(half_width), n_points);
  const SpectralFunction F = forward_transform(f0);
  double s = 0.0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double w = F.omega(k);
    const double sinc = w == 0.0 ? 1.0 : std::sin(0.5 * w) / (0.5 * w);
    s += std::abs(F[k] * sinc);
  }
  return s * F.d_omega();
}

CalibrationResult calibrate_a(std::size_t scan_points) {
  require(scan_points >= 2, Errc::invalid_argument, "scan needs at least two points");
  CalibrationResult out;
  const double lo = std::log(1e-3), hi = std::log(1e2);
  for (std::size_t i = 0; i < scan_points; ++i) {
    const double a = std::exp(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(scan_points - 1));
    out.a_grid.push_back(a);
    out.residual.push_back(calibration_integral(a) - 2.0 * kPi);
  }

  // Sign change bracket closest to a = 1 in log distance.
  double best_distance = INFINITY;
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < scan_points; ++i) {
    if ((out.residual[i] <= 0.0) == (out.residual[i + 1] <= 0.0)) continue;
    ++out.sign_changes;
    const double mid = 0.5 * (std::log(out.a_grid[i]) + std::log(out.a_grid[i + 1]));
    if (std::abs(mid) < best_distance) {
      best_distance = std::abs(mid);
      best = i;
    }
  }
  if (out.sign_changes > 0) {
    double a_lo = out.a_grid[best], a_hi = out.a_grid[best + 1];
    double r_lo = out.residual[best];
    for (int iter = 0; iter < 60 && a_hi - a_lo > 1e-12 * a_hi; ++iter) {
      const double mid = std::sqrt(a_lo * a_hi);
      const double r = calibration_integral(mid) - 2.0 * kPi;
      if ((r <= 0.0) == (r_lo <= 0.0)) {
        a_lo = mid;
        r_lo = r;
      } else {
        a_hi = mid;
      }
    }
    out.root_found = true;
    out.a = std::sqrt(a_lo * a_hi);
  }
  out.c_a = bump_normalizer(out.a);
  return out;
}

PhaseTable::PhaseTable(std::size_t n) : cos(n), sin(n) {
  for (std::size_t r = 0; r < n; ++r) {
    const double t = 2.0 * kPi * static_cast<double>(r) / static_cast<double>(n);
    cos[r] = std::cos(t);
    sin[r] = std::sin(t);
  }
}

double box_transform(double omega, double A) noexcept {
  const double h = A - 0.5;
  if (omega == 0.0) return 1.0;
  return std::sin(h * omega) / (h * omega);
}

LfGrid::LfGrid(double A, std::size_t n_points, const BumpDensity& bump)
    : A_(A),
      bump_(bump),
      plateau_(GridFunction::zeros(lf_support(A), n_points)),
      phases_(n_points) {
  require(n_points % (2 * kPad) == 0, Errc::invalid_grid, "grid too small for the window");
  window_begin_ = (kPad - 1) * n_points / (2 * kPad);
  window_end_ = (kPad + 1) * n_points / (2 * kPad);
  frequency_step_ = kPad;

  SpectralFunction F = forward_transform(bump_.on_grid(plateau_.support(), n_points));
  for (std::size_t k = 0; k < F.size(); ++k) F.values()[k] *= box_transform(F.omega(k), A);
  GridFunction conv = inverse_transform(F, plateau_.support(), n_points);
  // Outside [-A, A] the convolution vanishes identically; clear rounding residue.
  for (std::size_t j = 0; j < n_points; ++j)
    if (std::abs(conv.x(j)) >= A) conv.values()[j] = 0.0;
  plateau_ = std::move(conv);
}

void LfGrid::add_perturbation(std::span<double> out, int k, double weight) const {
  require(k != 0, Errc::invalid_argument, "perturbation index must be nonzero");
  require(out.size() == size(), Errc::invalid_grid, "perturbation buffer has the wrong size");
  const auto n = static_cast<long long>(size());
  const long long kk = std::llabs(static_cast<long long>(k));
  // k pi x_j / A = -k pad pi + 2 pi (k pad j mod n) / n.
  const double sign = (kk * kPad) % 2 == 0 ? 1.0 : -1.0;
  const double amp = weight * sign / std::sqrt(A_);
  const long long stride = (kk * frequency_step_) % n;
  long long r = (stride * static_cast<long long>(window_begin_)) % n;
  if (k > 0) {
    for (std::size_t j = window_begin_; j < window_end_; ++j, r = (r + stride) % n)
      out[j] += amp * phases_.cos[static_cast<std::size_t>(r)];
  } else {
    // sin(k pi x / A) = -sin(|k| pi x / A) for k < 0.
    for (std::size_t j = window_begin_; j < window_end_; ++j, r = (r + stride) % n)
      out[j] -= amp * phases_.sin[static_cast<std::size_t>(r)];
  }
}

GridFunction LfGrid::perturbation(int k) const {
  GridFunction phi = GridFunction::zeros(support(), size());
  add_perturbation(phi.values(), k, 1.0);
  return phi;
}

GridFunction plateau_density(double A, std::size_t n_points) {
  return LfGrid(A, n_points).plateau();
}

double plateau_reference(double x, double A, const BumpDensity& bump) {
  return (bump_cdf(x + A - 0.5, bump) - bump_cdf(x - A + 0.5, bump)) / (2.0 * A - 1.0);
}

GridFunction perturbation(int k, double A, std::size_t n_points) {
  return LfGrid(A, n_points).perturbation(k);
}

std::vector<std::vector<double>> perturbation_gram(const LfGrid& grid, int K) {
  require(K >= 1, Errc::invalid_argument, "Gram matrix needs K >= 1");
  std::vector<GridFunction> phi;
  for (int k = -K; k <= K; ++k)
    if (k != 0) phi.push_back(grid.perturbation(k));
  const auto& kt = simd::kernels();
  const double dx = grid.plateau().step();
  std::vector<std::vector<double>> gram(phi.size(), std::vector<double>(phi.size()));
  for (std::size_t i = 0; i < phi.size(); ++i)
    for (std::size_t j = i; j < phi.size(); ++j) {
      // The window sits strictly inside the grid, so the trapezoid end terms vanish.
      const double v = dx * kt.dot(phi[i].values().data(), phi[j].values().data(), grid.size());
      gram[i][j] = gram[j][i] = v;
    }
  return gram;
}

}  // namespace fracsob
