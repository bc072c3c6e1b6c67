#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "kgsplit/errors.hpp"

namespace kgsplit::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<std::complex<double>> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

const FftEngine& FftEngine::for_shape(const std::vector<int>& shape) {
  static std::map<std::vector<int>, std::unique_ptr<FftEngine>> cache;
  std::lock_guard lock(planner_mutex());
  auto it = cache.find(shape);
  if (it == cache.end()) {
    it = cache.emplace(shape, std::unique_ptr<FftEngine>(new FftEngine(shape))).first;
  }
  return *it->second;
}

// Called with planner_mutex held.
FftEngine::FftEngine(const std::vector<int>& shape) : size_(1) {
  for (int n : shape) size_ *= static_cast<std::size_t>(n);
  std::vector<std::complex<double>> scratch(size_);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  const int rank = static_cast<int>(shape.size());
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  forward_plan_ = fftw_plan_dft(rank, shape.data(), buf, buf, FFTW_FORWARD, flags);
  backward_plan_ = fftw_plan_dft(rank, shape.data(), buf, buf, FFTW_BACKWARD, flags);
  if (forward_plan_ == nullptr || backward_plan_ == nullptr) {
    throw Error("FFTW failed to create a plan");
  }
}

FftEngine::~FftEngine() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

void FftEngine::forward_unscaled(std::span<std::complex<double>> data) const {
  if (data.size() != size_) throw ContractViolation("FFT: size mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data), as_fftw(data));
}

void FftEngine::forward(std::span<std::complex<double>> data) const {
  forward_unscaled(data);
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& c : data) c *= scale;
}

void FftEngine::backward(std::span<std::complex<double>> data) const {
  if (data.size() != size_) throw ContractViolation("FFT: size mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), as_fftw(data), as_fftw(data));
}

}  // namespace kgsplit::detail
