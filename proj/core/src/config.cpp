#include "tsimg/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tsimg/errors.hpp"

namespace tsimg {

using nlohmann::ordered_json;

int RepresentationConfig::window_samples() const {
  return static_cast<int>(std::lround(window_s * target_hz));
}

ValidationReport validate_config(const RepresentationConfig& cfg) {
  ValidationReport report;
  const auto require = [&](bool ok, std::string message) {
    if (!ok) report.push_back(std::move(message));
  };
  require(cfg.window_s > 0.0, "window_s > 0");
  require(cfg.overlap_fraction >= 0.0 && cfg.overlap_fraction < 1.0, "overlap_fraction in [0, 1)");
  require(cfg.target_hz > 0.0, "target_hz > 0");
  require(cfg.output_size >= 1, "output_size >= 1");
  require(cfg.recurrence.epsilon >= 0.0, "recurrence.epsilon >= 0");
  require(cfg.recurrence.target_rate > 0.0 && cfg.recurrence.target_rate < 1.0,
          "recurrence.target_rate in (0, 1)");
  require(cfg.mtf.n_bins >= 2, "mtf.n_bins >= 2");
  require(cfg.cwt.wavelet == "morlet", "cwt.wavelet must be 'morlet'");
  require(cfg.cwt.omega0 > 0.0, "cwt.omega0 > 0");
  require(cfg.cwt.n_scales >= 1, "cwt.n_scales >= 1");
  require(cfg.cwt.f_min_hz > 0.0, "cwt.f_min_hz > 0");
  require(cfg.cwt.f_min_hz < cfg.cwt.f_max_hz, "cwt.f_min_hz < cwt.f_max_hz");
  require(cfg.cwt.f_max_hz <= cfg.target_hz / 2.0, "cwt.f_max_hz <= Nyquist (target_hz / 2)");
  require(cfg.stft.window_fn == "hann", "stft.window_fn must be 'hann'");
  require(cfg.stft.window_len >= 2, "stft.window_len >= 2");
  require(cfg.stft.window_len <= cfg.window_samples(), "stft.window_len <= window samples");
  require(cfg.stft.hop >= 1, "stft.hop >= 1");
  require(std::isfinite(cfg.stft.db_floor), "stft.db_floor finite");
  require(cfg.effective_paa_len() >= 1, "paa_target_len >= 1");
  return report;
}

namespace {

std::string_view mode_name(EpsilonMode mode) {
  return mode == EpsilonMode::fixed ? "fixed" : "rate";
}

ordered_json to_json(const RepresentationConfig& cfg) {
  ordered_json j;
  j["window_s"] = cfg.window_s;
  j["overlap_fraction"] = cfg.overlap_fraction;
  j["target_hz"] = cfg.target_hz;
  j["output_size"] = cfg.output_size;
  j["recurrence"] = {{"epsilon_mode", mode_name(cfg.recurrence.epsilon_mode)},
                     {"epsilon", cfg.recurrence.epsilon},
                     {"target_rate", cfg.recurrence.target_rate}};
  j["mtf"] = {{"n_bins", cfg.mtf.n_bins}};
  j["cwt"] = {{"wavelet", cfg.cwt.wavelet},
              {"omega0", cfg.cwt.omega0},
              {"n_scales", cfg.cwt.n_scales},
              {"f_min_hz", cfg.cwt.f_min_hz},
              {"f_max_hz", cfg.cwt.f_max_hz}};
  j["stft"] = {{"window_len", cfg.stft.window_len},
               {"hop", cfg.stft.hop},
               {"window_fn", cfg.stft.window_fn},
               {"db_floor", cfg.stft.db_floor}};
  if (cfg.paa_target_len) j["paa_target_len"] = *cfg.paa_target_len;
  return j;
}

// Reads known keys of one JSON object into fields, rejecting anything else so
// that typos in config files do not silently fall back to defaults.
class ObjectReader {
public:
  ObjectReader(const ordered_json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(where() + " must be a JSON object");
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.push_back(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      if constexpr (std::is_same_v<T, int>) {
        if (!it->is_number_integer()) throw ConfigError("");
      } else if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw ConfigError("");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw ConfigError("");
      }
      out = it->template get<T>();
    } catch (const std::exception&) {
      throw ConfigError(where(key) + " has the wrong type");
    }
  }

  const ordered_json* child(const char* key) {
    seen_.push_back(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : obj_.items()) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        throw ConfigError("unknown config field " + where(key));
      }
    }
  }

  std::string where(std::string_view key = {}) const {
    std::string p = path_;
    if (!key.empty()) p += p.empty() ? std::string(key) : "." + std::string(key);
    return p.empty() ? "config" : "'" + p + "'";
  }

private:
  const ordered_json& obj_;
  std::string path_;
  std::vector<std::string> seen_;
};

}  // namespace

std::string config_to_json(const RepresentationConfig& cfg) {
  return to_json(cfg).dump(2) + "\n";
}

RepresentationConfig config_from_json(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }

  RepresentationConfig cfg;
  ObjectReader top(root, "");
  top.read("window_s", cfg.window_s);
  top.read("overlap_fraction", cfg.overlap_fraction);
  top.read("target_hz", cfg.target_hz);
  top.read("output_size", cfg.output_size);

  if (const auto* node = top.child("recurrence")) {
    ObjectReader r(*node, "recurrence");
    std::string mode = std::string(mode_name(cfg.recurrence.epsilon_mode));
    r.read("epsilon_mode", mode);
    if (mode == "fixed") {
      cfg.recurrence.epsilon_mode = EpsilonMode::fixed;
    } else if (mode == "rate") {
      cfg.recurrence.epsilon_mode = EpsilonMode::rate;
    } else {
      throw ConfigError("'recurrence.epsilon_mode' must be 'fixed' or 'rate', got '" + mode + "'");
    }
    r.read("epsilon", cfg.recurrence.epsilon);
    r.read("target_rate", cfg.recurrence.target_rate);
    r.reject_unknown();
  }
  if (const auto* node = top.child("mtf")) {
    ObjectReader r(*node, "mtf");
    r.read("n_bins", cfg.mtf.n_bins);
    r.reject_unknown();
  }
  if (const auto* node = top.child("cwt")) {
    ObjectReader r(*node, "cwt");
    r.read("wavelet", cfg.cwt.wavelet);
    r.read("omega0", cfg.cwt.omega0);
    r.read("n_scales", cfg.cwt.n_scales);
    r.read("f_min_hz", cfg.cwt.f_min_hz);
    r.read("f_max_hz", cfg.cwt.f_max_hz);
    r.reject_unknown();
  }
  if (const auto* node = top.child("stft")) {
    ObjectReader r(*node, "stft");
    r.read("window_len", cfg.stft.window_len);
    r.read("hop", cfg.stft.hop);
    r.read("window_fn", cfg.stft.window_fn);
    r.read("db_floor", cfg.stft.db_floor);
    r.reject_unknown();
  }
  if (const auto* node = top.child("paa_target_len"); node && !node->is_null()) {
    if (!node->is_number_integer()) throw ConfigError("'paa_target_len' has the wrong type");
    cfg.paa_target_len = node->get<int>();
  }
  top.reject_unknown();
  return cfg;
}

RepresentationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return config_from_json(text.str());
}

}  // namespace tsimg
