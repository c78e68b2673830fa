#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace dyadic_ns::detail {
namespace {

// The FFTW planner is not reentrant; execution of an existing plan on new
// arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int n, FftDirection dir) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_tuple(dim, n, dir == FftDirection::forward);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t size = 1;
    int dims[3];
    for (int a = 0; a < dim; ++a) {
      dims[a] = n;
      size *= static_cast<std::size_t>(n);
    }
    std::vector<std::complex<double>> scratch(size);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft(dim, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void fft_inplace(std::span<std::complex<double>> data, int dim, int n, FftDirection dir) {
  fftw_plan plan = plan_cache().get(dim, n, dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace dyadic_ns::detail
