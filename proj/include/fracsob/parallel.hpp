#pragma once

#include <cstddef>
#include <functional>

namespace fracsob {

/// Resolve a worker count: 0 means all hardware threads.
unsigned resolve_workers(unsigned requested) noexcept;

/// Run body(i) for i in [0, count) on up to `workers` threads. Work is claimed through an
/// atomic counter, so callers must write results by index. The exception with the
/// smallest index is rethrown.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

/// Neumaier-compensated sum in index order.
class CompensatedSum {
 public:
  void add(double v) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace fracsob
