#pragma once

#include <complex>
#include <span>

namespace muculant::detail {

enum class FftSign { forward, backward };

/// In-place unnormalized DFT; forward uses e^{-2 pi i k n / N}.
/// Safe to call concurrently: plans and buffers are per thread.
void fft(std::span<std::complex<double>> data, FftSign sign);

}  // namespace muculant::detail
