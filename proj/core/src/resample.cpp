#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tsimg/preprocess.hpp"

namespace tsimg::preprocess {

namespace {

constexpr double kKaiserBeta = 8.6;
// Passband edge and stopband edge as fractions of the output rate; the
// windowed-sinc cutoff sits halfway between them at 0.45.
constexpr double kPassEdge = 0.40;
constexpr double kStopEdge = 0.50;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

}  // namespace

std::vector<double> antialias_taps(double src_hz, double dst_hz) {
  if (dst_hz >= src_hz) return {};
  // Kaiser's length estimate for the attenuation the beta provides.
  const double attenuation_db = kKaiserBeta / 0.1102 + 8.7;
  const double transition = (kStopEdge - kPassEdge) * dst_hz / src_hz;
  auto length = static_cast<std::size_t>(std::ceil((attenuation_db - 7.95) / (14.36 * transition))) + 1;
  if (length % 2 == 0) ++length;

  const double cutoff = 0.5 * (kPassEdge + kStopEdge) * dst_hz / src_hz;  // cycles per input sample
  const double half = static_cast<double>(length - 1) / 2.0;
  const double norm = std::cyl_bessel_i(0.0, kKaiserBeta);
  std::vector<double> taps(length);
  double sum = 0.0;
  for (std::size_t i = 0; i < length; ++i) {
    const double m = static_cast<double>(i) - half;
    const double r = m / half;
    const double window = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(std::max(0.0, 1.0 - r * r))) / norm;
    taps[i] = 2.0 * cutoff * sinc(2.0 * cutoff * m) * window;
    sum += taps[i];
  }
  for (auto& t : taps) t /= sum;
  return taps;
}

std::vector<double> resample(std::span<const double> samples, double src_hz, double dst_hz) {
  if (samples.empty()) throw std::invalid_argument("resample: empty input");
  if (!(src_hz > 0.0) || !(dst_hz > 0.0)) throw std::invalid_argument("resample: rates must be positive");
  if (src_hz == dst_hz) return {samples.begin(), samples.end()};

  const auto n = samples.size();
  std::vector<double> filtered(samples.begin(), samples.end());
  if (const auto taps = antialias_taps(src_hz, dst_hz); !taps.empty()) {
    // Point-symmetric extension about the end samples keeps local trends
    // (and any sinusoid starting at a zero crossing) continuous.
    const auto half = static_cast<std::ptrdiff_t>(taps.size() / 2);
    const auto sn = static_cast<std::ptrdiff_t>(n);
    const auto at = [&](std::ptrdiff_t i) -> double {
      if (sn == 1) return samples[0];
      if (i < 0) {
        const auto k = std::min(-i, sn - 1);
        return 2.0 * samples[0] - samples[static_cast<std::size_t>(k)];
      }
      if (i >= sn) {
        const auto k = std::min(i - (sn - 1), sn - 1);
        return 2.0 * samples[n - 1] - samples[static_cast<std::size_t>(sn - 1 - k)];
      }
      return samples[static_cast<std::size_t>(i)];
    };
    for (std::ptrdiff_t i = 0; i < sn; ++i) {
      double acc = 0.0;
      if (i >= half && i + half < sn) {
        const double* x = samples.data() + (i - half);
        for (std::size_t k = 0; k < taps.size(); ++k) acc += taps[k] * x[k];
      } else {
        for (std::size_t k = 0; k < taps.size(); ++k) acc += taps[k] * at(i - half + static_cast<std::ptrdiff_t>(k));
      }
      filtered[static_cast<std::size_t>(i)] = acc;
    }
  }

  const auto out_len = static_cast<std::size_t>(std::floor(static_cast<double>(n) * dst_hz / src_hz));
  std::vector<double> out(out_len);
  const double step = src_hz / dst_hz;
  for (std::size_t k = 0; k < out_len; ++k) {
    const double pos = static_cast<double>(k) * step;
    const auto j = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(j);
    out[k] = j + 1 < n ? filtered[j] + frac * (filtered[j + 1] - filtered[j]) : filtered[n - 1];
  }
  return out;
}

MultiChannelRecording resample_recording(const MultiChannelRecording& recording, double dst_hz) {
  MultiChannelRecording out;
  out.recording_id = recording.recording_id;
  out.sample_rate_hz = dst_hz;
  out.annotations = recording.annotations;
  for (const auto& ch : recording.channels) {
    out.channels.push_back({ch.name, ch.samples.empty() ? std::vector<double>{}
                                                        : resample(ch.samples, recording.sample_rate_hz, dst_hz)});
  }
  return out;
}

}  // namespace tsimg::preprocess
