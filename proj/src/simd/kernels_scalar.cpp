#include "fracsob/simd.hpp"

namespace fracsob::simd {
namespace {

double sum(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j];
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += x[j] * y[j];
  return s;
}

double squared_distance(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double d = x[j] - y[j];
    s += d * d;
  }
  return s;
}

double weighted_power(const std::complex<double>* z, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * std::norm(z[k]);
  return s;
}

void scale_complex(std::complex<double>* z, const double* r, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) z[k] *= r[k];
}

void multiply_complex(std::complex<double>* z, const std::complex<double>* m, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double re = z[k].real() * m[k].real() - z[k].imag() * m[k].imag();
    const double im = z[k].real() * m[k].imag() + z[k].imag() * m[k].real();
    z[k] = {re, im};
  }
}

void accumulate_lerp(double* out, const double* src, std::size_t n, double t, double w) {
  const double a = w * (1.0 - t);
  const double b = w * t;
  for (std::size_t j = 0; j < n; ++j) out[j] += a * src[j] + b * src[j + 1];
}

const KernelTable table{Isa::scalar, sum, dot, squared_distance, weighted_power,
                        scale_complex, multiply_complex, accumulate_lerp};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return table; }

}  // namespace fracsob::simd
