#include "fft.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include <fftw3.h>

namespace muculant::detail {

namespace {

// FFTW's planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(std::size_t n, FftSign sign) : n_(n) {
    std::lock_guard lock(planner_mutex());
    buffer_ = fftw_alloc_complex(n);
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), buffer_, buffer_,
                             sign == FftSign::forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
    fftw_free(buffer_);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;

  void run(std::span<std::complex<double>> data) {
    auto* raw = reinterpret_cast<std::complex<double>*>(buffer_);
    std::copy(data.begin(), data.end(), raw);
    fftw_execute(plan_);
    std::copy(raw, raw + n_, data.begin());
  }

 private:
  std::size_t n_;
  fftw_complex* buffer_ = nullptr;
  fftw_plan plan_ = nullptr;
};

Plan& plan_for(std::size_t n, FftSign sign) {
  thread_local std::map<std::pair<std::size_t, FftSign>, std::unique_ptr<Plan>> cache;
  auto& slot = cache[{n, sign}];
  if (!slot) slot = std::make_unique<Plan>(n, sign);
  return *slot;
}

}  // namespace

void fft(std::span<std::complex<double>> data, FftSign sign) {
  if (data.size() <= 1) return;
  plan_for(data.size(), sign).run(data);
}

}  // namespace muculant::detail
