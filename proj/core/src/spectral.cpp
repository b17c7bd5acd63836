#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "tsimg/errors.hpp"
#include "tsimg/transforms.hpp"

namespace tsimg::transforms {

using cplx = std::complex<double>;
using detail::FftDirection;

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<double> cwt_frequencies(const CwtConfig& cfg) {
  const auto n = static_cast<std::size_t>(std::max(cfg.n_scales, 1));
  std::vector<double> f(n, cfg.f_min_hz);
  if (n == 1) return f;
  const double ratio = std::log(cfg.f_max_hz / cfg.f_min_hz);
  for (std::size_t k = 0; k < n; ++k) {
    f[k] = cfg.f_min_hz * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  f.back() = cfg.f_max_hz;
  return f;
}

double cwt_scale(double frequency_hz, double omega0, double sample_rate_hz) {
  return omega0 * sample_rate_hz / (2.0 * std::numbers::pi * frequency_hz);
}

Field cwt_scalogram(std::span<const double> channel, const CwtConfig& cfg, double sample_rate_hz) {
  if (channel.empty()) throw TransformError("cwt: empty channel");
  if (!(cfg.f_min_hz > 0.0 && cfg.f_min_hz < cfg.f_max_hz && cfg.f_max_hz <= sample_rate_hz / 2.0)) {
    throw TransformError("cwt: need 0 < f_min_hz < f_max_hz <= Nyquist");
  }
  const auto n = channel.size();
  const auto nfft = next_pow2(n);

  std::vector<cplx> spectrum(nfft, cplx{});
  std::copy(channel.begin(), channel.end(), spectrum.begin());
  detail::fft(spectrum, FftDirection::forward);

  // Angular frequency in radians per sample for each FFT bin.
  std::vector<double> omega(nfft);
  for (std::size_t m = 0; m < nfft; ++m) {
    const auto signed_bin = m <= nfft / 2 ? static_cast<double>(m) : static_cast<double>(m) - static_cast<double>(nfft);
    omega[m] = 2.0 * std::numbers::pi * signed_bin / static_cast<double>(nfft);
  }

  // Fourier transform of the Morlet wavelet: pi^-1/4 sqrt(2 pi) exp(-(w - w0)^2 / 2).
  const double psi_norm = std::pow(std::numbers::pi, -0.25) * std::sqrt(2.0 * std::numbers::pi);
  const auto freqs = cwt_frequencies(cfg);
  const auto rows = freqs.size();
  Field out(rows, n);
  std::vector<cplx> work(nfft);
  for (std::size_t k = 0; k < rows; ++k) {
    const double a = cwt_scale(freqs[k], cfg.omega0, sample_rate_hz);
    // (1/sqrt(a)) * sum_n s[n] psi*((n - b)/a) == sqrt(a) * IDFT(S(w) * conj(psi_hat(a w))).
    const double gain = std::sqrt(a) * psi_norm / static_cast<double>(nfft);
    for (std::size_t m = 0; m < nfft; ++m) {
      const double d = a * omega[m] - cfg.omega0;
      work[m] = spectrum[m] * (gain * std::exp(-0.5 * d * d));
    }
    detail::fft(work, FftDirection::inverse);
    auto row = out.row(rows - 1 - k);
    for (std::size_t b = 0; b < n; ++b) row[b] = std::abs(work[b]);
  }
  return out;
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n));
  }
  return w;
}

Field stft_magnitudes(std::span<const double> channel, const StftConfig& cfg) {
  if (cfg.window_len < 2 || cfg.hop < 1) throw TransformError("stft: need window_len >= 2 and hop >= 1");
  const auto len = static_cast<std::size_t>(cfg.window_len);
  const auto hop = static_cast<std::size_t>(cfg.hop);
  if (len > channel.size()) {
    throw TransformError("stft: window_len " + std::to_string(len) + " exceeds signal length " +
                         std::to_string(channel.size()));
  }
  const auto frames = (channel.size() - len) / hop + 1;
  const auto bins = len / 2 + 1;
  const auto window = hann_window(len);

  Field out(bins, frames);
  std::vector<cplx> buf(len);
  for (std::size_t f = 0; f < frames; ++f) {
    const auto offset = f * hop;
    for (std::size_t i = 0; i < len; ++i) buf[i] = channel[offset + i] * window[i];
    detail::fft(buf, FftDirection::forward);
    for (std::size_t k = 0; k < bins; ++k) out(k, f) = std::abs(buf[k]);
  }
  return out;
}

Field stft_spectrogram(std::span<const double> channel, const StftConfig& cfg) {
  const auto mag = stft_magnitudes(channel, cfg);
  const double offset = std::pow(10.0, cfg.db_floor / 20.0);
  Field out(mag.rows(), mag.cols());
  for (std::size_t k = 0; k < mag.rows(); ++k) {
    auto row = out.row(mag.rows() - 1 - k);
    for (std::size_t f = 0; f < mag.cols(); ++f) {
      row[f] = std::max(cfg.db_floor, 20.0 * std::log10(mag(k, f) + offset));
    }
  }
  return out;
}

}  // namespace tsimg::transforms
