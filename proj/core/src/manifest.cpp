#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsimg/errors.hpp"
#include "tsimg/ingest.hpp"

namespace tsimg::ingest {

using nlohmann::ordered_json;

namespace {

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const ordered_json& field(const ordered_json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError("manifest: missing field '" + path + "." + key + "'");
  return *it;
}

[[noreturn]] void wrong_type(const std::string& path, const char* expected) {
  throw InputError("manifest: field '" + path + "' must be " + expected);
}

std::string get_string(const ordered_json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_string()) wrong_type(path + "." + key, "a string");
  return v.get<std::string>();
}

double get_number(const ordered_json& obj, const char* key, const std::string& path) {
  const auto& v = field(obj, key, path);
  if (!v.is_number()) wrong_type(path + "." + key, "a number");
  return v.get<double>();
}

std::vector<std::string> get_strings(const ordered_json& v, const std::string& path) {
  if (!v.is_array()) wrong_type(path, "an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) wrong_type(path + "[" + std::to_string(i) + "]", "a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

Annotation parse_annotation(const ordered_json& j, const std::string& path) {
  if (!j.is_object()) wrong_type(path, "an object");
  Annotation a;
  const std::string category = get_string(j, "category", path);
  const auto parsed = parse_category(category);
  if (!parsed) throw InputError("manifest: unknown artifact category '" + category + "' at '" + path + "'");
  a.category = *parsed;
  a.start_s = get_number(j, "start_s", path);
  a.end_s = get_number(j, "end_s", path);
  if (auto it = j.find("channel_names"); it != j.end()) {
    a.channel_names = get_strings(*it, path + ".channel_names");
  }
  if (!(a.start_s >= 0.0 && a.start_s < a.end_s)) {
    std::ostringstream msg;
    msg << "manifest: annotation '" << path << "' (" << category << ") has start_s " << a.start_s
        << " and end_s " << a.end_s << "; need 0 <= start_s < end_s";
    throw InputError(msg.str());
  }
  return a;
}

ordered_json annotation_json(const Annotation& a) {
  ordered_json j;
  j["category"] = std::string(to_string(a.category));
  j["start_s"] = a.start_s;
  j["end_s"] = a.end_s;
  j["channel_names"] = a.channel_names;
  return j;
}

}  // namespace

std::filesystem::path Manifest::resolve(const ManifestEntry& entry) const {
  if (entry.data_path.is_absolute() || base_dir.empty()) return entry.data_path;
  return base_dir / entry.data_path;
}

Manifest parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("manifest: JSON parse error at line " + std::to_string(line_of(text, e.byte)) +
                     ": " + e.what());
  }
  if (!root.is_object()) throw InputError("manifest: top level must be an object");

  Manifest manifest;
  manifest.base_dir = base_dir;
  const auto& recordings = field(root, "recordings", "manifest");
  if (!recordings.is_array()) wrong_type("recordings", "an array");

  std::set<std::string> ids;
  for (std::size_t i = 0; i < recordings.size(); ++i) {
    const std::string path = "recordings[" + std::to_string(i) + "]";
    const auto& r = recordings[i];
    if (!r.is_object()) wrong_type(path, "an object");

    ManifestEntry entry;
    entry.recording_id = get_string(r, "recording_id", path);
    entry.data_path = get_string(r, "data_path", path);
    entry.format = get_string(r, "format", path);
    if (entry.format != "csv") {
      throw InputError("manifest: '" + path + ".format' is '" + entry.format + "'; only 'csv' is supported");
    }
    entry.sample_rate_hz = get_number(r, "sample_rate_hz", path);
    if (!(entry.sample_rate_hz > 0.0)) throw InputError("manifest: '" + path + ".sample_rate_hz' must be positive");
    entry.channel_names = get_strings(field(r, "channel_names", path), path + ".channel_names");
    if (auto it = r.find("annotations"); it != r.end()) {
      if (!it->is_array()) wrong_type(path + ".annotations", "an array");
      for (std::size_t k = 0; k < it->size(); ++k) {
        entry.annotations.push_back(
            parse_annotation((*it)[k], path + ".annotations[" + std::to_string(k) + "]"));
      }
    }
    if (!ids.insert(entry.recording_id).second) {
      throw InputError("manifest: duplicate recording_id '" + entry.recording_id + "'");
    }
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("manifest file not found: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_manifest(text.str(), path.parent_path());
}

std::string manifest_to_json(const Manifest& manifest) {
  ordered_json recordings = ordered_json::array();
  for (const auto& e : manifest.entries) {
    ordered_json r;
    r["recording_id"] = e.recording_id;
    r["data_path"] = e.data_path.generic_string();
    r["format"] = e.format;
    r["sample_rate_hz"] = e.sample_rate_hz;
    r["channel_names"] = e.channel_names;
    ordered_json anns = ordered_json::array();
    for (const auto& a : e.annotations) anns.push_back(annotation_json(a));
    r["annotations"] = std::move(anns);
    recordings.push_back(std::move(r));
  }
  ordered_json root;
  root["recordings"] = std::move(recordings);
  return root.dump(2) + "\n";
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write manifest " + path.string());
  out << manifest_to_json(manifest);
  if (!out) throw InputError("failed writing manifest " + path.string());
}

MultiChannelRecording load_entry(const Manifest& manifest, const ManifestEntry& entry) {
  const auto path = manifest.resolve(entry);
  if (!std::filesystem::exists(path)) {
    throw InputError("recording '" + entry.recording_id + "': data file not found: " + path.string());
  }
  auto recording = load_recording_csv(path, entry.sample_rate_hz, entry.channel_names, entry.recording_id);
  recording.annotations = entry.annotations;
  check_recording(recording);
  return recording;
}

}  // namespace tsimg::ingest
