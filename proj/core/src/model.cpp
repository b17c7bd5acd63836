#include "tsimg/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "tsimg/errors.hpp"

namespace tsimg {

namespace {
constexpr std::array<std::string_view, kNumCategories> kCategoryNames = {
    "chewing", "electrode", "eye_movement", "muscle", "shivering"};
}

std::string_view to_string(ArtifactCategory category) {
  return kCategoryNames[index_of(category)];
}

std::optional<ArtifactCategory> parse_category(std::string_view name) {
  for (std::size_t i = 0; i < kNumCategories; ++i) {
    if (kCategoryNames[i] == name) return kAllCategories[i];
  }
  return std::nullopt;
}

std::vector<std::string> MultiChannelRecording::channel_names() const {
  std::vector<std::string> names;
  names.reserve(channels.size());
  for (const auto& ch : channels) names.push_back(ch.name);
  return names;
}

void check_recording(const MultiChannelRecording& recording) {
  const auto fail = [&](const std::string& what) {
    throw InputError("recording '" + recording.recording_id + "': " + what);
  };
  if (!(recording.sample_rate_hz > 0.0) || !std::isfinite(recording.sample_rate_hz)) {
    fail("sample_rate_hz must be positive");
  }
  std::set<std::string> names;
  for (const auto& ch : recording.channels) {
    if (!names.insert(ch.name).second) fail("duplicate channel name '" + ch.name + "'");
    if (ch.samples.size() != recording.num_samples()) {
      fail("channel '" + ch.name + "' has " + std::to_string(ch.samples.size()) +
           " samples, expected " + std::to_string(recording.num_samples()));
    }
  }
  const double duration = recording.duration_s();
  for (std::size_t i = 0; i < recording.annotations.size(); ++i) {
    const auto& a = recording.annotations[i];
    if (!(a.start_s >= 0.0 && a.start_s < a.end_s && a.end_s <= duration + 1e-9)) {
      std::ostringstream msg;
      msg << "annotation " << i << " (" << to_string(a.category) << ", " << a.start_s << "-"
          << a.end_s << " s) outside recording of " << duration << " s";
      fail(msg.str());
    }
    for (const auto& name : a.channel_names) {
      if (!names.contains(name)) fail("annotation " + std::to_string(i) + " names unknown channel '" + name + "'");
    }
  }
}

template <typename T>
Matrix<T>::Matrix(std::size_t rows, std::size_t cols, std::vector<T> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix value count does not match " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
  }
}

template class Matrix<float>;
template class Matrix<double>;

ImageMatrix to_image(const Field& field) {
  ImageMatrix out(field.rows(), field.cols());
  std::ranges::transform(field.values(), out.values().begin(),
                         [](double v) { return static_cast<float>(v); });
  return out;
}

Field to_field(const ImageMatrix& image) {
  Field out(image.rows(), image.cols());
  std::ranges::copy(image.values(), out.values().begin());
  return out;
}

bool all_finite(const ImageMatrix& image) {
  return std::ranges::all_of(image.values(), [](float v) { return std::isfinite(v); });
}

std::size_t Window::flagged_count() const {
  return static_cast<std::size_t>(std::ranges::count_if(znorm_flags, [](auto f) { return f != 0; }));
}

}  // namespace tsimg
