#pragma once

#include <complex>
#include <span>
#include <vector>

namespace kgsplit::detail {

/// In-place complex DFT of a fixed row-major shape, backed by FFTW.
///
/// Plans are created once per shape with FFTW_ESTIMATE, which makes the
/// chosen algorithm (and therefore the roundoff) independent of timing.
/// Execution is thread-safe.
class FftEngine {
 public:
  static const FftEngine& for_shape(const std::vector<int>& shape);

  /// data <- sum_j data_j exp(-i k x_j) / N   (samples -> coefficients)
  void forward(std::span<std::complex<double>> data) const;
  /// data <- sum_k data_k exp(+i k x_j)       (coefficients -> samples)
  void backward(std::span<std::complex<double>> data) const;
  /// Unnormalized forward DFT.
  void forward_unscaled(std::span<std::complex<double>> data) const;

  std::size_t size() const noexcept { return size_; }

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;
  ~FftEngine();

 private:
  explicit FftEngine(const std::vector<int>& shape);

  void* forward_plan_;
  void* backward_plan_;
  std::size_t size_;
};

}  // namespace kgsplit::detail
