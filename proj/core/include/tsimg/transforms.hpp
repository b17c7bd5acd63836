#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tsimg/config.hpp"
#include "tsimg/model.hpp"

namespace tsimg::transforms {

enum class RepresentationKind { cor, rp, gasf, mtf, cwt, spec };

inline constexpr std::array<RepresentationKind, 6> kAllKinds = {
    RepresentationKind::cor, RepresentationKind::rp,  RepresentationKind::gasf,
    RepresentationKind::mtf, RepresentationKind::cwt, RepresentationKind::spec};

std::string_view to_string(RepresentationKind kind);
std::optional<RepresentationKind> parse_kind(std::string_view name);

// All matrices are stored with (row, col) = (i, j) ascending, i.e. entry
// (i, j) relates sample i to sample j.

/// Pearson correlation between every pair of channels (rows of `data`).
/// Channels with zero variance correlate 0 with everything else and 1 with
/// themselves. Throws TransformError for fewer than two channels or samples.
Field correlation_matrix(const Field& data);

/// Entry (i, j) is 1 when |x_i - x_j| > epsilon, else 0; zero marks recurrence.
Field recurrence_plot(std::span<const double> channel, double epsilon);

/// Smallest threshold making at least `target_rate` of the pairs (i < j)
/// recurrent. Long inputs use an evenly strided subset of at most 1e5 pairs.
double choose_epsilon(std::span<const double> channel, double target_rate);

/// Min-max rescale into [-1, 1]; a constant channel maps to all zeros.
std::vector<double> rescale_unit(std::span<const double> channel);
/// Polar angle arccos of the rescaled channel, in [0, pi].
std::vector<double> angular_encoding(std::span<const double> channel);
/// Gramian angular summation field, cos(theta_i + theta_j).
Field gasf(std::span<const double> channel);

/// Quantile bin (0 .. n_bins-1) of every sample. Bin edges are the k/n_bins
/// empirical quantiles (linear interpolation) and each bin is right-closed.
std::vector<int> mtf_bins(std::span<const double> channel, int n_bins);
/// Row-stochastic one-step transition matrix between quantile bins. Bins
/// without outgoing transitions transition to themselves.
Field mtf_transition_matrix(std::span<const int> bins, int n_bins);
/// Markov transition field: entry (i, j) is W(bin_i, bin_j).
Field mtf(std::span<const double> channel, int n_bins);

/// Centre frequencies of the scalogram rows, ascending (row order is reversed:
/// the last row holds the lowest frequency).
std::vector<double> cwt_frequencies(const CwtConfig& cfg);
/// Morlet scale in samples for a centre frequency.
double cwt_scale(double frequency_hz, double omega0, double sample_rate_hz);
/// |CWT| with 1/sqrt(a) normalization, n_scales rows by N columns.
Field cwt_scalogram(std::span<const double> channel, const CwtConfig& cfg, double sample_rate_hz);

/// Periodic Hann window of length n.
std::vector<double> hann_window(std::size_t n);
/// Linear |STFT|: row k is DFT bin k (ascending), one column per frame.
/// Frames start at 0, hop, ... and lie fully inside the signal.
Field stft_magnitudes(std::span<const double> channel, const StftConfig& cfg);
/// dB spectrogram, clamped at db_floor, lowest frequency in the last row.
/// Throws TransformError when window_len exceeds the signal length.
Field stft_spectrogram(std::span<const double> channel, const StftConfig& cfg);

/// Separable resize: area averaging along a shrinking axis, linear
/// interpolation along a growing one, copy along an unchanged one.
Field resize(const Field& image, std::size_t out_rows, std::size_t out_cols);
ImageMatrix resize(const ImageMatrix& image, std::size_t out_rows, std::size_t out_cols);

/// Element-wise mean. Throws TransformError for an empty list or mismatched shapes.
Field ensemble_average(std::span<const Field> images);
ImageMatrix ensemble_average(std::span<const ImageMatrix> images);

/// Full per-window pipeline for one representation kind; output is
/// output_size x output_size.
ImageMatrix represent_window(const Window& window, RepresentationKind kind, const RepresentationConfig& cfg);

}  // namespace tsimg::transforms
