// AVX2 + FMA variants of the scalar kernels. Only compiled with -mavx2 -mfma and
// only reached after a runtime CPU check.

#include <immintrin.h>

#include "fracsob/simd.hpp"

namespace fracsob::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// [w0, w0, w1, w1] from two consecutive reals, matching an interleaved complex pair.
inline __m256d duplicate_pair(const double* w) {
  const __m256d v = _mm256_castpd128_pd256(_mm_loadu_pd(w));
  return _mm256_permute4x64_pd(v, 0b01010000);
}

double sum(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + j));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + j + 4));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; j < n; ++j) s += x[j];
  return s;
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + j + 4), _mm256_loadu_pd(y + j + 4), a1);
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; j < n; ++j) s += x[j] * y[j];
  return s;
}

double squared_distance(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 8 <= n; j += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + j), _mm256_loadu_pd(y + j));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + j + 4), _mm256_loadu_pd(y + j + 4));
    a0 = _mm256_fmadd_pd(d0, d0, a0);
    a1 = _mm256_fmadd_pd(d1, d1, a1);
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; j < n; ++j) {
    const double d = x[j] - y[j];
    s += d * d;
  }
  return s;
}

double weighted_power(const std::complex<double>* z, const double* w, std::size_t n) {
  const double* zd = reinterpret_cast<const double*>(z);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d v = _mm256_loadu_pd(zd + 2 * k);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), duplicate_pair(w + k), acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += w[k] * std::norm(z[k]);
  return s;
}

void scale_complex(std::complex<double>* z, const double* r, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d v = _mm256_loadu_pd(zd + 2 * k);
    _mm256_storeu_pd(zd + 2 * k, _mm256_mul_pd(v, duplicate_pair(r + k)));
  }
  for (; k < n; ++k) z[k] *= r[k];
}

void multiply_complex(std::complex<double>* z, const std::complex<double>* m, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  const double* md = reinterpret_cast<const double*>(m);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d a = _mm256_loadu_pd(zd + 2 * k);
    const __m256d b = _mm256_loadu_pd(md + 2 * k);
    const __m256d b_re = _mm256_movedup_pd(b);          // [br, br]
    const __m256d b_im = _mm256_permute_pd(b, 0b1111);  // [bi, bi]
    const __m256d a_swap = _mm256_permute_pd(a, 0b0101);  // [ai, ar]
    // [ar*br - ai*bi, ai*br + ar*bi]
    _mm256_storeu_pd(zd + 2 * k, _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_swap, b_im)));
  }
  for (; k < n; ++k) {
    const double re = z[k].real() * m[k].real() - z[k].imag() * m[k].imag();
    const double im = z[k].real() * m[k].imag() + z[k].imag() * m[k].real();
    z[k] = {re, im};
  }
}

void accumulate_lerp(double* out, const double* src, std::size_t n, double t, double w) {
  const double a = w * (1.0 - t);
  const double b = w * t;
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d s0 = _mm256_loadu_pd(src + j);
    const __m256d s1 = _mm256_loadu_pd(src + j + 1);
    __m256d o = _mm256_loadu_pd(out + j);
    o = _mm256_add_pd(o, _mm256_fmadd_pd(va, s0, _mm256_mul_pd(vb, s1)));
    _mm256_storeu_pd(out + j, o);
  }
  for (; j < n; ++j) out[j] += a * src[j] + b * src[j + 1];
}

const KernelTable table{Isa::avx2, sum, dot, squared_distance, weighted_power,
                        scale_complex, multiply_complex, accumulate_lerp};

}  // namespace

const KernelTable& avx2_table() noexcept { return table; }

}  // namespace fracsob::simd
