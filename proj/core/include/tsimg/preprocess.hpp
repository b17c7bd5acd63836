#pragma once

#include <span>
#include <vector>

#include "tsimg/config.hpp"
#include "tsimg/model.hpp"

namespace tsimg::preprocess {

/// Rate conversion to `dst_hz`. Output length is floor(n * dst_hz / src_hz).
/// Downsampling applies a linear-phase Kaiser low-pass (cutoff 0.45 * dst_hz)
/// before linear interpolation; equal rates return the input unchanged.
/// Throws std::invalid_argument on empty input or non-positive rates.
std::vector<double> resample(std::span<const double> samples, double src_hz, double dst_hz);

/// Taps of the anti-aliasing filter `resample` uses for this rate pair
/// (empty when no filtering is needed). Unit DC gain, odd length.
std::vector<double> antialias_taps(double src_hz, double dst_hz);

/// Resamples every channel; annotations carry over unchanged (they are in seconds).
MultiChannelRecording resample_recording(const MultiChannelRecording& recording, double dst_hz);

/// Fixed-length windows starting every window_s * (1 - overlap_fraction)
/// seconds; windows running past the end are dropped. Data are copied raw.
std::vector<Window> segment(const MultiChannelRecording& recording, double window_s, double overlap_fraction);

/// Per-channel z-score with population standard deviation. Channels with
/// deviation below 1e-12 become zeros and are flagged.
Window znormalize(Window window);
void znormalize_channel(std::span<double> channel, std::uint8_t& flag);

/// 1 for each category with an annotation overlapping the window by at least
/// min(0.5 s, annotation duration).
LabelVector assign_labels(const Window& window, std::span<const Annotation> annotations);

/// Piecewise aggregate approximation with fractional bins. A target longer
/// than the input falls back to linear interpolation.
std::vector<double> paa(std::span<const double> samples, std::size_t target_len);

/// Resample, segment, normalize and label one recording under `cfg`.
std::vector<Window> prepare_windows(const MultiChannelRecording& recording, const RepresentationConfig& cfg);

}  // namespace tsimg::preprocess
