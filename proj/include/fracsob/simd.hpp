#pragma once

// Inner-loop kernels with a scalar reference and optional AVX2 variants.
// kernels() picks the best variant supported by the running CPU once; set
// FRACSOB_SIMD=scalar in the environment to force the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace fracsob::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // sum_j x[j]
  double (*sum)(const double* x, std::size_t n);
  // sum_j x[j] * y[j]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_j (x[j] - y[j])^2
  double (*squared_distance)(const double* x, const double* y, std::size_t n);
  // sum_k w[k] * |z[k]|^2
  double (*weighted_power)(const std::complex<double>* z, const double* w, std::size_t n);
  // z[k] *= r[k]  (real scale)
  void (*scale_complex)(std::complex<double>* z, const double* r, std::size_t n);
  // z[k] *= m[k]  (complex multiply)
  void (*multiply_complex)(std::complex<double>* z, const std::complex<double>* m, std::size_t n);
  // out[j] += w * ((1 - t) * src[j] + t * src[j + 1]); reads src[0..n]
  void (*accumulate_lerp)(double* out, const double* src, std::size_t n, double t, double w);
};

const KernelTable& scalar_kernels() noexcept;

/// AVX2+FMA table, or nullptr when not compiled in or not supported by this CPU.
const KernelTable* avx2_kernels() noexcept;

/// The dispatched table used by the library.
const KernelTable& kernels() noexcept;

}  // namespace fracsob::simd
