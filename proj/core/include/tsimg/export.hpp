#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tsimg/config.hpp"
#include "tsimg/ingest.hpp"
#include "tsimg/model.hpp"
#include "tsimg/transforms.hpp"

namespace tsimg::io {

// .tsim layout, all little-endian:
//   "TSIM" | u16 version = 1 | u8 dtype = 1 (float32) | u32 rows | u32 cols | rows*cols float32, row-major
inline constexpr std::array<char, 4> kTsimMagic = {'T', 'S', 'I', 'M'};
inline constexpr std::uint16_t kTsimVersion = 1;
inline constexpr std::uint8_t kTsimFloat32 = 1;
inline constexpr std::size_t kTsimHeaderBytes = 15;

std::vector<std::uint8_t> encode_matrix(const ImageMatrix& image);
/// Throws FormatError on bad magic, version or dtype and on a payload whose
/// size does not match the header.
ImageMatrix decode_matrix(std::span<const std::uint8_t> bytes);

void write_matrix(const ImageMatrix& image, const std::filesystem::path& path);
ImageMatrix read_matrix(const std::filesystem::path& path);

/// 8-bit gray levels as write_png stores them, row 0 first.
std::vector<std::uint8_t> to_gray8(const ImageMatrix& image);
/// Grayscale PNG, min -> 0 and max -> 255 (all 128 for a constant image).
void write_png(const ImageMatrix& image, const std::filesystem::path& path);

struct DatasetIndexRecord {
  std::string window_id;
  std::string recording_id;
  double start_s = 0.0;
  transforms::RepresentationKind kind{};
  /// Relative to the dataset directory.
  std::string image_path;
  LabelVector labels{};
  std::size_t znorm_flag_count = 0;

  friend bool operator==(const DatasetIndexRecord&, const DatasetIndexRecord&) = default;
};

std::string to_json_line(const DatasetIndexRecord& record);
DatasetIndexRecord parse_index_line(const std::string& line);
std::vector<DatasetIndexRecord> read_index(const std::filesystem::path& index_path);

struct BuildOptions {
  bool write_png = false;
  unsigned threads = 1;
};

struct RenderFailure {
  std::string window_id;
  transforms::RepresentationKind kind{};
  std::string message;
};

struct BuildResult {
  std::vector<DatasetIndexRecord> records;
  std::vector<RenderFailure> failures;
  std::size_t window_count = 0;
  /// Windows carrying each label (counted once per window, not per kind).
  std::array<std::size_t, kNumCategories> label_counts{};
  std::size_t files_written = 0;
};

/// Renders every window of every recording for each requested kind into
/// `<out_dir>/<kind>/<window_id>.tsim` and writes `<out_dir>/index.jsonl`,
/// ordered by (recording_id, start_s, kind). Output bytes do not depend on
/// `options.threads`. Throws InputError if out_dir cannot be written.
BuildResult build_dataset(std::span<const MultiChannelRecording> recordings, const RepresentationConfig& cfg,
                          std::span<const transforms::RepresentationKind> kinds,
                          const std::filesystem::path& out_dir, const BuildOptions& options = {});

/// Loads every manifest entry (InputError names a missing data file) and builds.
BuildResult build_dataset(const ingest::Manifest& manifest, const RepresentationConfig& cfg,
                          std::span<const transforms::RepresentationKind> kinds,
                          const std::filesystem::path& out_dir, const BuildOptions& options = {});

}  // namespace tsimg::io
