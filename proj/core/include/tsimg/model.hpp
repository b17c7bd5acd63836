#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsimg {

// Label vectors follow this order; it is part of every file format.
enum class ArtifactCategory : std::uint8_t {
  chewing = 0,
  electrode = 1,
  eye_movement = 2,
  muscle = 3,
  shivering = 4,
};

inline constexpr std::size_t kNumCategories = 5;

inline constexpr std::array<ArtifactCategory, kNumCategories> kAllCategories = {
    ArtifactCategory::chewing, ArtifactCategory::electrode, ArtifactCategory::eye_movement,
    ArtifactCategory::muscle, ArtifactCategory::shivering};

std::string_view to_string(ArtifactCategory category);
std::optional<ArtifactCategory> parse_category(std::string_view name);

constexpr std::size_t index_of(ArtifactCategory category) {
  return static_cast<std::size_t>(category);
}

/// Presence flag per category, indexed by `index_of`. All zeros means artifact-free.
using LabelVector = std::array<std::uint8_t, kNumCategories>;

struct Annotation {
  ArtifactCategory category{};
  double start_s = 0.0;
  double end_s = 0.0;
  /// Empty means the event affects all channels.
  std::vector<std::string> channel_names;

  double duration_s() const { return end_s - start_s; }
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct Channel {
  std::string name;
  std::vector<double> samples;
  friend bool operator==(const Channel&, const Channel&) = default;
};

/// Named channels of uniformly sampled data plus the events annotated on them.
/// Construct through `make_recording` to get the invariants checked.
struct MultiChannelRecording {
  std::string recording_id;
  double sample_rate_hz = 0.0;
  std::vector<Channel> channels;
  std::vector<Annotation> annotations;

  std::size_t num_samples() const { return channels.empty() ? 0 : channels.front().samples.size(); }
  double duration_s() const { return static_cast<double>(num_samples()) / sample_rate_hz; }
  std::vector<std::string> channel_names() const;
};

/// Checks equal channel lengths, unique names, a positive rate and annotation bounds.
/// Throws InputError naming the first violation.
void check_recording(const MultiChannelRecording& recording);

/// Dense row-major grid. Transforms work in double precision (`Field`); exported
/// images are single precision (`ImageMatrix`).
template <typename T>
class Matrix {
public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> values_;
};

extern template class Matrix<float>;
extern template class Matrix<double>;

using ImageMatrix = Matrix<float>;
using Field = Matrix<double>;

ImageMatrix to_image(const Field& field);
Field to_field(const ImageMatrix& image);
bool all_finite(const ImageMatrix& image);

/// One fixed-length multichannel segment. `data` is channel-major
/// (rows = channels, cols = samples).
struct Window {
  std::string window_id;
  std::string recording_id;
  double start_s = 0.0;
  double length_s = 0.0;
  double sample_rate_hz = 0.0;
  Field data;
  LabelVector labels{};
  /// Set for channels whose variance was too small to normalize.
  std::vector<std::uint8_t> znorm_flags;

  std::size_t num_channels() const { return data.rows(); }
  std::size_t num_samples() const { return data.cols(); }
  std::size_t flagged_count() const;
};

}  // namespace tsimg
