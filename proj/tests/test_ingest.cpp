#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "test_util.hpp"
#include "tsimg/errors.hpp"
#include "tsimg/ingest.hpp"

using namespace tsimg;
using namespace tsimg::ingest;
using tsimg::testing::TempDir;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

const char* kManifest = R"({
  "recordings": [
    {
      "recording_id": "s1",
      "data_path": "s1.csv",
      "format": "csv",
      "sample_rate_hz": 250,
      "channel_names": ["Fp1", "Fp2"],
      "annotations": [
        {"category": "eye_movement", "start_s": 1.0, "end_s": 1.5, "channel_names": ["Fp1"]},
        {"category": "muscle", "start_s": 2.0, "end_s": 2.25, "channel_names": []}
      ]
    }
  ]
}
)";

}  // namespace

TEST_CASE("manifest parsing") {
  SUBCASE("empty entry list") {
    const auto m = parse_manifest(R"({"recordings": []})");
    CHECK(m.entries.empty());
  }
  SUBCASE("fields") {
    const auto m = parse_manifest(kManifest, "/data");
    REQUIRE(m.entries.size() == 1);
    const auto& e = m.entries[0];
    CHECK(e.recording_id == "s1");
    CHECK(e.sample_rate_hz == 250.0);
    CHECK(e.channel_names == std::vector<std::string>{"Fp1", "Fp2"});
    REQUIRE(e.annotations.size() == 2);
    CHECK(e.annotations[0].category == ArtifactCategory::eye_movement);
    CHECK(e.annotations[1].duration_s() == doctest::Approx(0.25));
    CHECK(m.resolve(e) == std::filesystem::path("/data/s1.csv"));
  }
  SUBCASE("annotation ending before its start names the annotation") {
    std::string text = kManifest;
    text.replace(text.find("\"end_s\": 1.5"), 12, "\"end_s\": 0.5");
    const auto msg = error_of([&] { parse_manifest(text); });
    CHECK(msg.find("recordings[0].annotations[0]") != std::string::npos);
  }
  SUBCASE("duplicate recording ids") {
    auto j = nlohmann::json::parse(kManifest);
    j["recordings"].push_back(j["recordings"][0]);
    const auto msg = error_of([&] { parse_manifest(j.dump()); });
    CHECK(msg.find("duplicate recording_id 's1'") != std::string::npos);
  }
  SUBCASE("syntax errors report a line") {
    const auto msg = error_of([] { parse_manifest("{\n  \"recordings\": [\n  ,\n]}"); });
    CHECK(msg.find("line 3") != std::string::npos);
  }
  SUBCASE("missing and mistyped fields report their path") {
    auto j = nlohmann::json::parse(kManifest);
    j["recordings"][0].erase("sample_rate_hz");
    CHECK(error_of([&] { parse_manifest(j.dump()); }).find("recordings[0].sample_rate_hz") != std::string::npos);
    j = nlohmann::json::parse(kManifest);
    j["recordings"][0]["annotations"][1]["category"] = "sneeze";
    CHECK(error_of([&] { parse_manifest(j.dump()); }).find("sneeze") != std::string::npos);
    j = nlohmann::json::parse(kManifest);
    j["recordings"][0]["channel_names"] = "Fp1";
    CHECK_THROWS_AS(parse_manifest(j.dump()), InputError);
  }
  SUBCASE("missing file") {
    TempDir dir("manifest");
    CHECK_THROWS_AS(load_manifest(dir / "nope.json"), InputError);
  }
}

TEST_CASE("manifest round-trip") {
  TempDir dir("manifest");
  write_text(dir / "in.json", kManifest);
  const auto m = load_manifest(dir / "in.json");
  write_manifest(m, dir / "out.json");
  const auto a = nlohmann::json::parse(testing::read_text(dir / "in.json"));
  const auto b = nlohmann::json::parse(testing::read_text(dir / "out.json"));
  CHECK(a == b);
  CHECK(load_manifest(dir / "out.json").entries == m.entries);
}

TEST_CASE("recording CSV") {
  TempDir dir("csv");
  SUBCASE("2 channels x 10 rows") {
    std::string text = "a,b\n";
    for (int i = 0; i < 10; ++i) text += std::to_string(i) + "," + std::to_string(-i) + "\n";
    write_text(dir / "r.csv", text);
    const auto r = load_recording_csv(dir / "r.csv", 100.0, {"a", "b"}, "rec");
    CHECK(r.recording_id == "rec");
    REQUIRE(r.channels.size() == 2);
    CHECK(r.num_samples() == 10);
    CHECK(r.channels[1].samples[9] == -9.0);

    const auto from_header = load_recording_csv(dir / "r.csv", 100.0);
    CHECK(from_header.recording_id == "r");
    CHECK(from_header.channel_names() == std::vector<std::string>{"a", "b"});
  }
  SUBCASE("NaN cell is reported with its coordinates") {
    write_text(dir / "r.csv", "a,b\n1,2\n3,NaN\n");
    const auto msg = error_of([&] { load_recording_csv(dir / "r.csv", 100.0, {"a", "b"}); });
    CHECK(msg.find("row 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }
  SUBCASE("ragged row") {
    write_text(dir / "r.csv", "a,b\n1,2\n3\n");
    CHECK_THROWS_AS(load_recording_csv(dir / "r.csv", 100.0, {"a", "b"}), InputError);
  }
  SUBCASE("header mismatch") {
    write_text(dir / "r.csv", "a,c\n1,2\n");
    CHECK_THROWS_AS(load_recording_csv(dir / "r.csv", 100.0, {"a", "b"}), InputError);
  }
  SUBCASE("write then read keeps samples to single precision") {
    SynthConfig cfg;
    cfg.seed = 3;
    cfg.n_channels = 4;
    cfg.duration_s = 5.0;
    const auto rec = synthesize(cfg);
    write_recording_csv(rec, dir / "s.csv");
    const auto back = load_recording_csv(dir / "s.csv", rec.sample_rate_hz, rec.channel_names());
    REQUIRE(back.num_samples() == rec.num_samples());
    for (std::size_t c = 0; c < rec.channels.size(); ++c)
      for (std::size_t i = 0; i < rec.num_samples(); ++i)
        CHECK(static_cast<float>(back.channels[c].samples[i]) == static_cast<float>(rec.channels[c].samples[i]));
  }
}

TEST_CASE("load_entry attaches annotations and names missing files") {
  TempDir dir("entry");
  write_text(dir / "m.json", kManifest);
  const auto m = load_manifest(dir / "m.json");
  const auto msg = error_of([&] { load_entry(m, m.entries[0]); });
  CHECK(msg.find("s1.csv") != std::string::npos);

  std::string csv = "Fp1,Fp2\n";
  for (int i = 0; i < 1000; ++i) csv += "0,1\n";
  write_text(dir / "s1.csv", csv);
  const auto rec = load_entry(m, m.entries[0]);
  CHECK(rec.recording_id == "s1");
  CHECK(rec.annotations == m.entries[0].annotations);
}

TEST_CASE("synthesize") {
  SynthConfig cfg;
  cfg.seed = 42;
  cfg.duration_s = 30.0;

  SUBCASE("same seed, same recording") {
    const auto a = synthesize(cfg);
    const auto b = synthesize(cfg);
    CHECK(a.channels == b.channels);
    CHECK(a.annotations == b.annotations);
    CHECK(a.channels.size() == 19);
    CHECK(a.num_samples() == 7500);
    CHECK_NOTHROW(check_recording(a));
    cfg.seed = 43;
    CHECK(synthesize(cfg).channels != a.channels);
  }
  SUBCASE("zero rates give no annotations") {
    cfg.event_rates.fill(0.0);
    CHECK(synthesize(cfg).annotations.empty());
  }
  SUBCASE("Poisson event count") {
    // 60 min at 2 events/min: mean 120, count must lie in the 99% interval.
    cfg.duration_s = 3600.0;
    cfg.n_channels = 4;
    cfg.sample_rate_hz = 64.0;
    cfg.event_rates.fill(0.0);
    cfg.event_rates[index_of(ArtifactCategory::eye_movement)] = 2.0;
    const auto rec = synthesize(cfg);
    const auto n = rec.annotations.size();
    CHECK(n >= 90);
    CHECK(n <= 152);
  }
  SUBCASE("invalid configurations") {
    cfg.duration_s = 0.0;
    CHECK_THROWS_AS(synthesize(cfg), ConfigError);
    cfg.duration_s = 10.0;
    cfg.event_rates[0] = -1.0;
    CHECK_THROWS_AS(synthesize(cfg), ConfigError);
  }
}

TEST_CASE("every injected waveform stays inside its annotation above 10% of peak") {
  // With a silent background the signal is exactly the sum of the events. For
  // an event with no neighbour on its channel, everything between its end and
  // the next event must be within 10% of its peak, and nothing precedes the
  // first event.
  constexpr double kQuiet = 10.0;
  for (const auto category : kAllCategories) {
    CAPTURE(to_string(category));
    SynthConfig cfg;
    cfg.seed = 11;
    cfg.n_channels = 8;
    cfg.duration_s = 600.0;
    cfg.background = {10.0, 0.0, 0.0};
    cfg.event_rates.fill(0.0);
    cfg.event_rates[index_of(category)] = 2.0;
    const auto rec = synthesize(cfg);
    REQUIRE_FALSE(rec.annotations.empty());
    const double fs = rec.sample_rate_hz;

    std::size_t checked = 0;
    for (const auto& ch : rec.channels) {
      std::vector<const Annotation*> on_channel;
      for (const auto& a : rec.annotations) {
        if (a.channel_names.empty() || std::ranges::find(a.channel_names, ch.name) != a.channel_names.end())
          on_channel.push_back(&a);
      }
      std::ranges::sort(on_channel, {}, &Annotation::start_s);
      const auto sample_at = [&](double t) {
        return std::min(ch.samples.size(), static_cast<std::size_t>(std::max(0.0, std::ceil(t * fs))));
      };
      const auto first = on_channel.empty() ? ch.samples.size() : sample_at(on_channel.front()->start_s);
      for (std::size_t i = 0; i < first; ++i) CHECK(ch.samples[i] == 0.0);

      std::size_t violations = 0;
      for (std::size_t k = 0; k < on_channel.size(); ++k) {
        const auto& a = *on_channel[k];
        const double prev_end = k ? on_channel[k - 1]->end_s : -1e9;
        const double next_start = k + 1 < on_channel.size() ? on_channel[k + 1]->start_s : cfg.duration_s + kQuiet;
        if (a.start_s - prev_end < kQuiet || next_start - a.end_s < kQuiet) continue;
        double peak = 0.0;
        for (std::size_t i = sample_at(a.start_s); i < sample_at(a.end_s); ++i) peak = std::max(peak, std::abs(ch.samples[i]));
        for (std::size_t i = sample_at(a.end_s); i < sample_at(next_start); ++i)
          violations += std::abs(ch.samples[i]) > 0.1 * peak * (1.0 + 1e-9);
        ++checked;
      }
      CHECK(violations == 0);
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("dataset statistics") {
  Manifest m;
  ManifestEntry e;
  e.recording_id = "r";
  e.sample_rate_hz = 1.0;
  SUBCASE("no annotations") {
    m.entries.push_back(e);
    const auto s = dataset_stats(m, {3600.0});
    CHECK(s.recording_count == 1);
    CHECK(s.total_hours == doctest::Approx(1.0));
    for (const auto& c : s.categories) CHECK(c.share == 0.0);
  }
  SUBCASE("constructed distribution") {
    const std::pair<ArtifactCategory, double> seconds[] = {{ArtifactCategory::eye_movement, 457.0},
                                                           {ArtifactCategory::muscle, 359.0},
                                                           {ArtifactCategory::electrode, 159.0},
                                                           {ArtifactCategory::chewing, 22.0},
                                                           {ArtifactCategory::shivering, 1.0}};
    double t = 0.0;
    for (const auto& [cat, len] : seconds) {
      e.annotations.push_back({cat, t, t + len, {}});
      t += len;
    }
    m.entries.push_back(e);
    const auto s = dataset_stats(m);
    const auto share = [&](ArtifactCategory c) { return s.categories[index_of(c)].share; };
    for (const auto& [cat, len] : seconds) CHECK(std::abs(share(cat) - len / 998.0) < 1e-12);
    CHECK(s.categories[index_of(ArtifactCategory::eye_movement)].count == 1);
    CHECK(s.total_hours == 0.0);

    const auto table = stats_table(s);
    CHECK(table.find("45.8%") != std::string::npos);
    const auto j = nlohmann::json::parse(stats_json(s));
    CHECK(j.contains("categories"));
  }
  SUBCASE("shares sum to one on synthetic data") {
    SynthConfig cfg;
    cfg.seed = 5;
    cfg.duration_s = 300.0;
    const auto rec = synthesize(cfg);
    e.annotations = rec.annotations;
    m.entries.push_back(e);
    const auto s = dataset_stats(m);
    double total = 0.0;
    for (const auto& c : s.categories) total += c.share;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}
