#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "tsimg/model.hpp"

namespace tsimg::ingest {

struct ManifestEntry {
  std::string recording_id;
  /// Relative paths are resolved against the manifest's directory.
  std::filesystem::path data_path;
  std::string format = "csv";
  double sample_rate_hz = 0.0;
  std::vector<std::string> channel_names;
  std::vector<Annotation> annotations;
  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  /// Directory relative data paths are resolved against.
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const ManifestEntry& entry) const;
};

/// Throws InputError for a missing file, malformed JSON (with line number),
/// a missing or mistyped field (with its JSON path), duplicate recording ids
/// and annotations with end_s <= start_s.
Manifest load_manifest(const std::filesystem::path& path);
Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir = {});
std::string manifest_to_json(const Manifest& manifest);
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);

/// Reads a CSV with a header naming `channel_names` in order, one row per sample.
MultiChannelRecording load_recording_csv(const std::filesystem::path& path, double sample_rate_hz,
                                         const std::vector<std::string>& channel_names,
                                         std::string recording_id = {});
/// Same, taking the channel names from the header.
MultiChannelRecording load_recording_csv(const std::filesystem::path& path, double sample_rate_hz);
/// Values are written at single precision (shortest round-trip form).
void write_recording_csv(const MultiChannelRecording& recording, const std::filesystem::path& path);

/// Loads an entry's CSV and attaches the manifest annotations.
MultiChannelRecording load_entry(const Manifest& manifest, const ManifestEntry& entry);

struct BackgroundConfig {
  double alpha_hz = 10.0;
  double amplitude = 1.0;
  double noise_sigma = 0.3;
};

struct SynthConfig {
  std::uint64_t seed = 0;
  int n_channels = 19;
  double duration_s = 60.0;
  double sample_rate_hz = 250.0;
  /// Events per minute, indexed by category.
  std::array<double, kNumCategories> event_rates = default_event_rates();
  BackgroundConfig background;
  std::string recording_id;

  static std::array<double, kNumCategories> default_event_rates();
};

/// Deterministic synthetic EEG-like recording with injected, annotated artifacts.
/// Throws ConfigError on an invalid configuration.
MultiChannelRecording synthesize(const SynthConfig& cfg);

struct CategoryStats {
  std::size_t count = 0;
  double seconds = 0.0;
  /// Share of total annotated time.
  double share = 0.0;
};

struct StatsReport {
  std::size_t recording_count = 0;
  double total_hours = 0.0;
  std::array<CategoryStats, kNumCategories> categories{};
};

/// Per-category event counts and time shares. `recording_durations_s` supplies
/// the length of each entry (in manifest order) for the total-hours figure; when
/// it is empty, total_hours is left at 0.
StatsReport dataset_stats(const Manifest& manifest, const std::vector<double>& recording_durations_s = {});
/// Loads every recording to measure its duration.
StatsReport dataset_stats_with_durations(const Manifest& manifest);

std::string stats_table(const StatsReport& report);
std::string stats_json(const StatsReport& report);

}  // namespace tsimg::ingest
