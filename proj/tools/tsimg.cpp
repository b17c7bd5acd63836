// tsimg: time series to image datasets.
//
//   tsimg convert --input F --sample-rate-hz R --repr K --out DIR [--config C.json] [--png]
//   tsimg build   --manifest M.json --repr all --out DIR [--config C.json] [--png]
//   tsimg synth   --seed S --minutes M --out DIR
//   tsimg stats   --manifest M.json [--json]
//
// Exit codes: 0 ok, 1 configuration error, 2 input error, 3 partial render failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tsimg/config.hpp"
#include "tsimg/errors.hpp"
#include "tsimg/export.hpp"
#include "tsimg/ingest.hpp"
#include "tsimg/transforms.hpp"

namespace fs = std::filesystem;
using namespace tsimg;
using transforms::RepresentationKind;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kInputError = 2, kPartialFailure = 3 };

struct PipelineFlags {
  std::string repr = "all";
  std::string out_dir;
  std::string config_path;
  bool png = false;
  std::optional<unsigned> threads;
  std::optional<double> window_s;
  std::optional<double> overlap;
  std::optional<double> target_hz;
  std::optional<int> output_size;
};

void add_pipeline_flags(CLI::App& cmd, PipelineFlags& flags) {
  cmd.add_option("--repr", flags.repr, "Representation: cor, rp, gasf, mtf, cwt, spec, all (or a comma list)")
      ->required();
  cmd.add_option("--out", flags.out_dir, "Output dataset directory")->required();
  cmd.add_option("--config", flags.config_path, "RepresentationConfig JSON file");
  cmd.add_flag("--png", flags.png, "Also write 8-bit PNG previews");
  cmd.add_option("--threads", flags.threads, "Worker threads (default: $TSIMG_THREADS or all cores)");
  cmd.add_option("--window-s", flags.window_s, "Override window length in seconds");
  cmd.add_option("--overlap", flags.overlap, "Override window overlap fraction");
  cmd.add_option("--target-hz", flags.target_hz, "Override resampling rate");
  cmd.add_option("--output-size", flags.output_size, "Override output image size");
}

std::vector<RepresentationKind> parse_kinds(const std::string& spec) {
  std::vector<RepresentationKind> kinds;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "all") {
      kinds.assign(transforms::kAllKinds.begin(), transforms::kAllKinds.end());
      continue;
    }
    const auto kind = transforms::parse_kind(item);
    if (!kind) {
      std::string valid;
      for (auto k : transforms::kAllKinds) valid += std::string(transforms::to_string(k)) + ", ";
      throw ConfigError("unknown representation '" + item + "'; valid kinds: " + valid + "all");
    }
    kinds.push_back(*kind);
  }
  if (kinds.empty()) throw ConfigError("no representation kind given");
  return kinds;
}

RepresentationConfig resolve_config(const PipelineFlags& flags) {
  RepresentationConfig cfg = flags.config_path.empty() ? RepresentationConfig{} : load_config(flags.config_path);
  if (flags.window_s) cfg.window_s = *flags.window_s;
  if (flags.overlap) cfg.overlap_fraction = *flags.overlap;
  if (flags.target_hz) cfg.target_hz = *flags.target_hz;
  if (flags.output_size) cfg.output_size = *flags.output_size;
  if (const auto report = validate_config(cfg); !report.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : report) msg += "\n  violated: " + v;
    throw ConfigError(msg);
  }
  return cfg;
}

unsigned resolve_threads(const std::optional<unsigned>& flag) {
  if (flag) return std::max(1u, *flag);
  if (const char* env = std::getenv("TSIMG_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("TSIMG_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int report_failures(const io::BuildResult& result) {
  for (const auto& f : result.failures) {
    std::cerr << "render failed: " << f.window_id << " [" << transforms::to_string(f.kind) << "]: " << f.message
              << "\n";
  }
  return result.failures.empty() ? kOk : kPartialFailure;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int run_convert(const std::string& input, double rate, const PipelineFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  const auto kinds = parse_kinds(flags.repr);
  const auto cfg = resolve_config(flags);
  const auto threads = resolve_threads(flags.threads);
  if (!(rate > 0.0)) throw ConfigError("--sample-rate-hz must be positive");

  const auto recording = ingest::load_recording_csv(input, rate);
  const auto result = io::build_dataset(std::span(&recording, 1), cfg, kinds, flags.out_dir,
                                        {.write_png = flags.png, .threads = threads});
  std::printf("windows=%zu files=%zu failures=%zu elapsed=%.2fs\n", result.window_count, result.files_written,
              result.failures.size(), seconds_since(start));
  return report_failures(result);
}

int run_build(const std::string& manifest_path, const PipelineFlags& flags) {
  const auto start = std::chrono::steady_clock::now();
  const auto kinds = parse_kinds(flags.repr);
  const auto cfg = resolve_config(flags);
  const auto threads = resolve_threads(flags.threads);

  const auto manifest = ingest::load_manifest(manifest_path);
  const auto result =
      io::build_dataset(manifest, cfg, kinds, flags.out_dir, {.write_png = flags.png, .threads = threads});
  std::printf("recordings=%zu windows=%zu records=%zu failures=%zu elapsed=%.2fs\n", manifest.entries.size(),
              result.window_count, result.records.size(), result.failures.size(), seconds_since(start));
  std::printf("%-14s %8s\n", "category", "windows");
  for (auto category : kAllCategories) {
    std::printf("%-14s %8zu\n", std::string(to_string(category)).c_str(), result.label_counts[index_of(category)]);
  }
  return report_failures(result);
}

int run_synth(std::uint64_t seed, double minutes, const std::string& out_dir, int recordings, int channels,
              double rate) {
  if (!(minutes > 0.0)) throw ConfigError("synth: duration must be positive (--minutes > 0)");
  if (recordings < 1) throw ConfigError("synth: --recordings must be >= 1");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InputError("cannot create output directory " + out_dir);

  ingest::Manifest manifest;
  for (int k = 0; k < recordings; ++k) {
    ingest::SynthConfig cfg;
    cfg.seed = seed + static_cast<std::uint64_t>(k);
    cfg.duration_s = minutes * 60.0;
    cfg.n_channels = channels;
    cfg.sample_rate_hz = rate;
    cfg.recording_id = recordings == 1 ? "synth-" + std::to_string(seed)
                                       : "synth-" + std::to_string(seed) + "-" + std::to_string(k);
    const auto rec = ingest::synthesize(cfg);
    const std::string file = cfg.recording_id + ".csv";
    ingest::write_recording_csv(rec, fs::path(out_dir) / file);
    manifest.entries.push_back({rec.recording_id, file, "csv", rec.sample_rate_hz, rec.channel_names(),
                                rec.annotations});
  }
  ingest::write_manifest(manifest, fs::path(out_dir) / "manifest.json");
  std::size_t events = 0;
  for (const auto& e : manifest.entries) events += e.annotations.size();
  std::printf("recordings=%d minutes=%g events=%zu manifest=%s\n", recordings, minutes, events,
              (fs::path(out_dir) / "manifest.json").string().c_str());
  return kOk;
}

int run_stats(const std::string& manifest_path, bool json) {
  const auto manifest = ingest::load_manifest(manifest_path);
  const auto report = ingest::dataset_stats_with_durations(manifest);
  std::cout << (json ? ingest::stats_json(report) : ingest::stats_table(report));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsimg: multichannel time series to image representations"};
  app.require_subcommand(1);

  auto* convert = app.add_subcommand("convert", "Render one CSV recording");
  std::string input;
  double rate = 0.0;
  PipelineFlags convert_flags;
  convert->add_option("--input", input, "CSV recording with a header row")->required();
  convert->add_option("--sample-rate-hz", rate, "Sampling rate of the CSV")->required();
  add_pipeline_flags(*convert, convert_flags);

  auto* build = app.add_subcommand("build", "Render every recording of a manifest");
  std::string build_manifest;
  PipelineFlags build_flags;
  build->add_option("--manifest", build_manifest, "Manifest JSON")->required();
  add_pipeline_flags(*build, build_flags);

  auto* synth = app.add_subcommand("synth", "Generate a synthetic annotated corpus");
  std::uint64_t seed = 0;
  double minutes = 0.0;
  std::string synth_out;
  int recordings = 1;
  int channels = 19;
  double synth_rate = 250.0;
  synth->add_option("--seed", seed, "PRNG seed")->required();
  synth->add_option("--minutes", minutes, "Minutes per recording")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--recordings", recordings, "Number of recordings");
  synth->add_option("--channels", channels, "Channels per recording");
  synth->add_option("--sample-rate-hz", synth_rate, "Sampling rate");

  auto* stats = app.add_subcommand("stats", "Per-category annotation statistics");
  std::string stats_manifest;
  bool stats_as_json = false;
  stats->add_option("--manifest", stats_manifest, "Manifest JSON")->required();
  stats->add_flag("--json", stats_as_json, "Print JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*convert) return run_convert(input, rate, convert_flags);
    if (*build) return run_build(build_manifest, build_flags);
    if (*synth) return run_synth(seed, minutes, synth_out, recordings, channels, synth_rate);
    if (*stats) return run_stats(stats_manifest, stats_as_json);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
