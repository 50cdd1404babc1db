#include "fracsob/fft.hpp"

#include <fftw3.h>

#include <bit>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "fracsob/error.hpp"

namespace fracsob::fft {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  // FFTW planning is not thread-safe, execution with the new-array interface is.
  fftw_plan get(std::size_t n, Direction direction) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(n, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<std::complex<double>> scratch(n);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int sign = direction == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    require(plan != nullptr, Errc::invalid_grid, "FFTW could not plan a transform of size " +
                                                     std::to_string(n));
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, Direction>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void transform(std::span<std::complex<double>> data, Direction direction) {
  const std::size_t n = data.size();
  require(n >= 1 && std::has_single_bit(n), Errc::invalid_grid,
          "transform size must be a power of two, got " + std::to_string(n));
  if (n == 1) return;
  fftw_plan plan = cache().get(n, direction);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace fracsob::fft
