#include <cstdlib>
#include <string_view>

#include "fracsob/simd.hpp"

namespace fracsob::simd {

#if FRACSOB_HAVE_AVX2
const KernelTable& avx2_table() noexcept;
#endif

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

const KernelTable* avx2_kernels() noexcept {
#if FRACSOB_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& kernels() noexcept {
  static const KernelTable& selected = [&]() -> const KernelTable& {
    const char* forced = std::getenv("FRACSOB_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* avx = avx2_kernels()) return *avx;
    return scalar_kernels();
  }();
  return selected;
}

}  // namespace fracsob::simd
