#include <algorithm>
#include <atomic>
#include <fstream>
#include <optional>
#include <thread>

#include <json.hpp>

#include "tsimg/errors.hpp"
#include "tsimg/export.hpp"
#include "tsimg/preprocess.hpp"

namespace tsimg::io {

namespace fs = std::filesystem;
using transforms::RepresentationKind;

std::string to_json_line(const DatasetIndexRecord& record) {
  nlohmann::ordered_json j;
  j["window_id"] = record.window_id;
  j["recording_id"] = record.recording_id;
  j["start_s"] = record.start_s;
  j["kind"] = std::string(transforms::to_string(record.kind));
  j["image_path"] = record.image_path;
  j["labels"] = record.labels;
  j["znorm_flag_count"] = record.znorm_flag_count;
  return j.dump();
}

DatasetIndexRecord parse_index_line(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    DatasetIndexRecord r;
    r.window_id = j.at("window_id").get<std::string>();
    r.recording_id = j.at("recording_id").get<std::string>();
    r.start_s = j.at("start_s").get<double>();
    const auto kind = transforms::parse_kind(j.at("kind").get<std::string>());
    if (!kind) throw InputError("index: unknown kind '" + j.at("kind").get<std::string>() + "'");
    r.kind = *kind;
    r.image_path = j.at("image_path").get<std::string>();
    const auto labels = j.at("labels").get<std::vector<int>>();
    if (labels.size() != kNumCategories) throw InputError("index: labels must have 5 entries");
    for (std::size_t k = 0; k < kNumCategories; ++k) r.labels[k] = static_cast<std::uint8_t>(labels[k] != 0);
    r.znorm_flag_count = j.at("znorm_flag_count").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("index: malformed line: ") + e.what());
  }
}

std::vector<DatasetIndexRecord> read_index(const fs::path& index_path) {
  std::ifstream in(index_path);
  if (!in) throw InputError("cannot open index " + index_path.string());
  std::vector<DatasetIndexRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) records.push_back(parse_index_line(line));
  }
  return records;
}

namespace {

struct Task {
  const Window* window;
  RepresentationKind kind;
};

struct Outcome {
  bool ok = false;
  std::string message;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// handled by exactly one worker, so results can be stored per index.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory " + dir.string());
}

}  // namespace

BuildResult build_dataset(std::span<const MultiChannelRecording> recordings, const RepresentationConfig& cfg,
                          std::span<const RepresentationKind> kinds, const fs::path& out_dir,
                          const BuildOptions& options) {
  if (const auto report = validate_config(cfg); !report.empty()) {
    throw ConfigError("invalid config: " + report.front());
  }
  std::vector<RepresentationKind> ordered(kinds.begin(), kinds.end());
  std::ranges::sort(ordered);
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  ensure_dir(out_dir);
  for (auto kind : ordered) ensure_dir(out_dir / transforms::to_string(kind));
  const auto index_path = out_dir / "index.jsonl";
  std::ofstream index(index_path, std::ios::binary | std::ios::trunc);
  if (!index) throw InputError("cannot write " + index_path.string());

  std::vector<const MultiChannelRecording*> order;
  for (const auto& r : recordings) order.push_back(&r);
  std::ranges::stable_sort(order, {}, [](const auto* r) { return r->recording_id; });

  BuildResult result;
  for (const auto* recording : order) {
    const auto windows = preprocess::prepare_windows(*recording, cfg);
    result.window_count += windows.size();
    for (const auto& w : windows) {
      for (std::size_t k = 0; k < kNumCategories; ++k) result.label_counts[k] += w.labels[k];
    }

    std::vector<Task> tasks;
    for (const auto& w : windows) {
      for (auto kind : ordered) tasks.push_back({&w, kind});
    }
    std::vector<Outcome> outcomes(tasks.size());
    parallel_for(tasks.size(), options.threads, [&](std::size_t i) {
      const auto& [window, kind] = tasks[i];
      const auto stem = out_dir / transforms::to_string(kind) / window->window_id;
      try {
        const auto image = transforms::represent_window(*window, kind, cfg);
        if (!all_finite(image)) throw TransformError("non-finite values in image");
        write_matrix(image, fs::path(stem).concat(".tsim"));
        if (options.write_png) write_png(image, fs::path(stem).concat(".png"));
        outcomes[i].ok = true;
      } catch (const std::exception& e) {
        outcomes[i].message = e.what();
      }
    });

    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const auto& [window, kind] = tasks[i];
      if (!outcomes[i].ok) {
        result.failures.push_back({window->window_id, kind, outcomes[i].message});
        continue;
      }
      DatasetIndexRecord record;
      record.window_id = window->window_id;
      record.recording_id = window->recording_id;
      record.start_s = window->start_s;
      record.kind = kind;
      record.image_path = std::string(transforms::to_string(kind)) + "/" + window->window_id + ".tsim";
      record.labels = window->labels;
      record.znorm_flag_count = window->flagged_count();
      index << to_json_line(record) << '\n';
      result.files_written += options.write_png ? 2 : 1;
      result.records.push_back(std::move(record));
    }
  }
  if (!index) throw InputError("failed writing " + index_path.string());
  return result;
}

BuildResult build_dataset(const ingest::Manifest& manifest, const RepresentationConfig& cfg,
                          std::span<const RepresentationKind> kinds, const fs::path& out_dir,
                          const BuildOptions& options) {
  std::vector<MultiChannelRecording> recordings;
  recordings.reserve(manifest.entries.size());
  for (const auto& entry : manifest.entries) recordings.push_back(ingest::load_entry(manifest, entry));
  return build_dataset(std::span<const MultiChannelRecording>(recordings), cfg, kinds, out_dir, options);
}

}  // namespace tsimg::io
