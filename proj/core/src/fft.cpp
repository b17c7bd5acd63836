#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace tsimg::detail {

namespace {

// FFTW's planner is not thread-safe but executing an existing plan is.
// FFTW_ESTIMATE keeps the chosen algorithm (and so every output bit)
// independent of timing measurements; FFTW_UNALIGNED lets one plan serve
// arrays of any alignment.
class PlanCache {
public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, FftDirection direction) {
    const std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    auto* scratch = fftw_alloc_complex(static_cast<std::size_t>(n));
    const int sign = direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft_1d(n, scratch, scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

private:
  std::mutex mutex_;
  std::map<std::pair<int, FftDirection>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void fft(std::span<std::complex<double>> data, FftDirection direction) {
  if (data.empty()) return;
  auto plan = cache().get(static_cast<int>(data.size()), direction);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, ptr, ptr);
}

}  // namespace tsimg::detail
