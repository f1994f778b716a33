#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <vector>

namespace dduet::fft {

enum class Direction { Forward, Backward };

namespace detail {

// FFTW planning is not thread-safe; execution through the new-array interface is.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(const std::vector<int>& dims, Direction dir) {
    std::lock_guard<std::mutex> lock(mutex_);
    Key key{dims, dir};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    std::vector<fftw_complex> in(total), out(total);
    const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), in.data(),
                                   out.data(), sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(std::move(key), plan);
    return plan;
  }

  PlanCache(const PlanCache&) = delete;
  PlanCache& operator=(const PlanCache&) = delete;

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  PlanCache() = default;

  struct Key {
    std::vector<int> dims;
    Direction dir;
    bool operator<(const Key& o) const {
      if (dims != o.dims) return dims < o.dims;
      return dir < o.dir;
    }
  };

  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

}  // namespace detail

/// Unnormalized multidimensional DFT (row-major, last index fastest).
/// Forward uses e^{-i...}, backward e^{+i...}; no scaling is applied.
inline std::vector<std::complex<double>> transform(std::span<const std::complex<double>> data,
                                                   const std::vector<int>& dims, Direction dir) {
  std::vector<std::complex<double>> in(data.begin(), data.end());
  std::vector<std::complex<double>> out(data.size());
  fftw_plan plan = detail::PlanCache::instance().get(dims, dir);
  fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace dduet::fft
