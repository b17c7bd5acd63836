#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tsimg {

enum class EpsilonMode { fixed, rate };

struct RecurrenceConfig {
  EpsilonMode epsilon_mode = EpsilonMode::fixed;
  double epsilon = 0.3;
  /// Fraction of recurrent pairs when epsilon_mode == rate.
  double target_rate = 0.10;
  friend bool operator==(const RecurrenceConfig&, const RecurrenceConfig&) = default;
};

struct MtfConfig {
  int n_bins = 8;
  friend bool operator==(const MtfConfig&, const MtfConfig&) = default;
};

struct CwtConfig {
  std::string wavelet = "morlet";
  double omega0 = 6.0;
  int n_scales = 64;
  double f_min_hz = 0.5;
  double f_max_hz = 64.0;
  friend bool operator==(const CwtConfig&, const CwtConfig&) = default;
};

struct StftConfig {
  int window_len = 128;
  int hop = 16;
  std::string window_fn = "hann";
  double db_floor = -80.0;
  friend bool operator==(const StftConfig&, const StftConfig&) = default;
};

/// Every tunable of the pipeline. JSON field names match the member names.
struct RepresentationConfig {
  double window_s = 5.0;
  double overlap_fraction = 0.5;
  double target_hz = 128.0;
  int output_size = 224;
  RecurrenceConfig recurrence;
  MtfConfig mtf;
  CwtConfig cwt;
  StftConfig stft;
  /// Unset means "same as output_size".
  std::optional<int> paa_target_len;

  int effective_paa_len() const { return paa_target_len.value_or(output_size); }
  int window_samples() const;

  friend bool operator==(const RepresentationConfig&, const RepresentationConfig&) = default;
};

/// Human-readable list of violated constraints; empty means valid.
using ValidationReport = std::vector<std::string>;

ValidationReport validate_config(const RepresentationConfig& cfg);

std::string config_to_json(const RepresentationConfig& cfg);
/// Missing fields keep their defaults. Throws ConfigError on malformed JSON,
/// unknown keys or wrongly typed values.
RepresentationConfig config_from_json(const std::string& text);
RepresentationConfig load_config(const std::filesystem::path& path);

}  // namespace tsimg
