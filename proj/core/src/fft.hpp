#pragma once

#include <complex>
#include <span>

namespace tsimg::detail {

enum class FftDirection { forward, inverse };

/// In-place unnormalized DFT of any length. Plans are cached per
/// (length, direction); safe to call from several threads.
void fft(std::span<std::complex<double>> data, FftDirection direction);

}  // namespace tsimg::detail
