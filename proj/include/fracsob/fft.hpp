#pragma once

#include <complex>
#include <span>

namespace fracsob::fft {

enum class Direction {
  forward,   // sum_j z_j exp(-2 pi i jk / n)
  backward,  // sum_j z_j exp(+2 pi i jk / n)
};

/// Unnormalized in-place DFT; size must be a power of two. Thread-safe.
void transform(std::span<std::complex<double>> data, Direction direction);

}  // namespace fracsob::fft
