#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "interp.hpp"
#include "tsimg/errors.hpp"
#include "tsimg/preprocess.hpp"

namespace tsimg::preprocess {

namespace {
constexpr double kMinStdDev = 1e-12;
constexpr double kMinLabelOverlapS = 0.5;
// Absorbs round-off in start/end arithmetic when comparing overlaps.
constexpr double kTimeSlack = 1e-9;

std::string window_id(const std::string& recording_id, std::size_t index) {
  char suffix[24];
  std::snprintf(suffix, sizeof suffix, "-w%05zu", index);
  return recording_id + suffix;
}
}  // namespace

std::vector<Window> segment(const MultiChannelRecording& recording, double window_s, double overlap_fraction) {
  if (!(window_s > 0.0)) throw ConfigError("segment: window_s must be positive");
  if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
    throw ConfigError("segment: overlap_fraction must lie in [0, 1)");
  }
  const double fs = recording.sample_rate_hz;
  const auto total = recording.num_samples();
  const auto length = static_cast<std::size_t>(std::llround(window_s * fs));
  const double hop_s = window_s * (1.0 - overlap_fraction);

  std::vector<Window> windows;
  if (length == 0) return windows;
  for (std::size_t k = 0;; ++k) {
    const double start_s = static_cast<double>(k) * hop_s;
    const auto first = static_cast<std::size_t>(std::llround(start_s * fs));
    if (first + length > total) break;

    Window w;
    w.window_id = window_id(recording.recording_id, k);
    w.recording_id = recording.recording_id;
    w.start_s = start_s;
    w.length_s = window_s;
    w.sample_rate_hz = fs;
    w.data = Field(recording.channels.size(), length);
    for (std::size_t c = 0; c < recording.channels.size(); ++c) {
      const auto& src = recording.channels[c].samples;
      std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(first), length, w.data.row(c).begin());
    }
    w.znorm_flags.assign(recording.channels.size(), 0);
    windows.push_back(std::move(w));
  }
  return windows;
}

void znormalize_channel(std::span<double> channel, std::uint8_t& flag) {
  const auto n = static_cast<double>(channel.size());
  const double mean = std::accumulate(channel.begin(), channel.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : channel) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (sd < kMinStdDev) {
    std::ranges::fill(channel, 0.0);
    flag = 1;
    return;
  }
  for (double& v : channel) v = (v - mean) / sd;
  flag = 0;
}

Window znormalize(Window window) {
  if (window.data.empty()) throw std::invalid_argument("znormalize: empty window");
  window.znorm_flags.resize(window.num_channels(), 0);
  for (std::size_t c = 0; c < window.num_channels(); ++c) {
    znormalize_channel(window.data.row(c), window.znorm_flags[c]);
  }
  return window;
}

LabelVector assign_labels(const Window& window, std::span<const Annotation> annotations) {
  LabelVector labels{};
  const double w0 = window.start_s;
  const double w1 = window.start_s + window.length_s;
  for (const auto& a : annotations) {
    const double overlap = std::min(a.end_s, w1) - std::max(a.start_s, w0);
    if (overlap <= 0.0) continue;
    if (overlap + kTimeSlack >= std::min(kMinLabelOverlapS, a.duration_s())) labels[index_of(a.category)] = 1;
  }
  return labels;
}

std::vector<double> paa(std::span<const double> samples, std::size_t target_len) {
  if (target_len == 0) throw std::invalid_argument("paa: target_len must be >= 1");
  if (samples.empty()) throw std::invalid_argument("paa: empty input");
  std::vector<double> out(target_len);
  detail::rescale_1d(samples, out);
  return out;
}

std::vector<Window> prepare_windows(const MultiChannelRecording& recording, const RepresentationConfig& cfg) {
  const auto resampled = recording.sample_rate_hz == cfg.target_hz
                             ? recording
                             : resample_recording(recording, cfg.target_hz);
  auto windows = segment(resampled, cfg.window_s, cfg.overlap_fraction);
  for (auto& w : windows) {
    w = znormalize(std::move(w));
    w.labels = assign_labels(w, recording.annotations);
  }
  return windows;
}

}  // namespace tsimg::preprocess
