#include <algorithm>

#include "interp.hpp"
#include "tsimg/errors.hpp"
#include "tsimg/preprocess.hpp"
#include "tsimg/transforms.hpp"

namespace tsimg::transforms {

namespace {
constexpr std::array<std::string_view, 6> kKindNames = {"cor", "rp", "gasf", "mtf", "cwt", "spec"};

template <typename T>
void check_shapes(std::span<const Matrix<T>> images) {
  if (images.empty()) throw TransformError("ensemble_average: no images");
  for (const auto& img : images) {
    if (img.rows() != images.front().rows() || img.cols() != images.front().cols()) {
      throw TransformError("ensemble_average: shape " + std::to_string(img.rows()) + "x" +
                           std::to_string(img.cols()) + " does not match " +
                           std::to_string(images.front().rows()) + "x" + std::to_string(images.front().cols()));
    }
  }
}
}  // namespace

std::string_view to_string(RepresentationKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<RepresentationKind> parse_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return kAllKinds[i];
  }
  return std::nullopt;
}

Field resize(const Field& image, std::size_t out_rows, std::size_t out_cols) {
  if (out_rows == 0 || out_cols == 0 || image.empty()) throw TransformError("resize: dimensions must be >= 1");
  if (out_rows == image.rows() && out_cols == image.cols()) return image;

  Field horizontal(image.rows(), out_cols);
  for (std::size_t r = 0; r < image.rows(); ++r) detail::rescale_1d(image.row(r), horizontal.row(r));

  Field out(out_rows, out_cols);
  std::vector<double> column(image.rows());
  std::vector<double> resized(out_rows);
  for (std::size_t c = 0; c < out_cols; ++c) {
    for (std::size_t r = 0; r < image.rows(); ++r) column[r] = horizontal(r, c);
    detail::rescale_1d(column, resized);
    for (std::size_t r = 0; r < out_rows; ++r) out(r, c) = resized[r];
  }
  return out;
}

ImageMatrix resize(const ImageMatrix& image, std::size_t out_rows, std::size_t out_cols) {
  if (out_rows == image.rows() && out_cols == image.cols()) return image;
  return to_image(resize(to_field(image), out_rows, out_cols));
}

Field ensemble_average(std::span<const Field> images) {
  check_shapes(images);
  if (images.size() == 1) return images.front();
  Field out(images.front().rows(), images.front().cols());
  auto acc = out.values();
  for (const auto& img : images) {
    const auto v = img.values();
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
  }
  const auto count = static_cast<double>(images.size());
  for (double& v : acc) v /= count;
  return out;
}

ImageMatrix ensemble_average(std::span<const ImageMatrix> images) {
  check_shapes(images);
  if (images.size() == 1) return images.front();
  std::vector<Field> fields;
  fields.reserve(images.size());
  for (const auto& img : images) fields.push_back(to_field(img));
  return to_image(ensemble_average(std::span<const Field>(fields)));
}

ImageMatrix represent_window(const Window& window, RepresentationKind kind, const RepresentationConfig& cfg) {
  const auto size = static_cast<std::size_t>(cfg.output_size);
  if (window.data.empty()) throw TransformError("represent_window: empty window");

  if (kind == RepresentationKind::cor) {
    return to_image(resize(correlation_matrix(window.data), size, size));
  }

  std::vector<Field> per_channel;
  per_channel.reserve(window.num_channels());
  for (std::size_t c = 0; c < window.num_channels(); ++c) {
    const auto channel = window.data.row(c);
    switch (kind) {
      case RepresentationKind::rp:
      case RepresentationKind::gasf:
      case RepresentationKind::mtf: {
        const auto reduced = preprocess::paa(channel, static_cast<std::size_t>(cfg.effective_paa_len()));
        if (kind == RepresentationKind::rp) {
          const double eps = cfg.recurrence.epsilon_mode == EpsilonMode::rate
                                 ? choose_epsilon(reduced, cfg.recurrence.target_rate)
                                 : cfg.recurrence.epsilon;
          per_channel.push_back(recurrence_plot(reduced, eps));
        } else if (kind == RepresentationKind::gasf) {
          per_channel.push_back(gasf(reduced));
        } else {
          per_channel.push_back(mtf(reduced, cfg.mtf.n_bins));
        }
        break;
      }
      case RepresentationKind::cwt:
        per_channel.push_back(resize(cwt_scalogram(channel, cfg.cwt, window.sample_rate_hz), size, size));
        break;
      case RepresentationKind::spec:
        per_channel.push_back(resize(stft_spectrogram(channel, cfg.stft), size, size));
        break;
      case RepresentationKind::cor:
        break;
    }
  }
  const auto averaged = ensemble_average(std::span<const Field>(per_channel));
  return to_image(resize(averaged, size, size));
}

}  // namespace tsimg::transforms
