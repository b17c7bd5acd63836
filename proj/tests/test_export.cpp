#include <doctest.h>

#include <png.h>

#include <cstring>
#include <limits>

#include "test_util.hpp"
#include "tsimg/errors.hpp"
#include "tsimg/export.hpp"
#include "tsimg/ingest.hpp"
#include "tsimg/preprocess.hpp"

using namespace tsimg;
using namespace tsimg::io;
using transforms::RepresentationKind;
using tsimg::testing::TempDir;

namespace {

// Decodes an 8-bit grayscale PNG into rows of pixels.
std::vector<std::vector<std::uint8_t>> read_gray_png(const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  REQUIRE(png_image_begin_read_from_file(&image, path.c_str()));
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  REQUIRE(png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr));
  std::vector<std::vector<std::uint8_t>> rows(image.height);
  for (std::size_t r = 0; r < image.height; ++r)
    rows[r].assign(buffer.begin() + static_cast<std::ptrdiff_t>(r * image.width),
                   buffer.begin() + static_cast<std::ptrdiff_t>((r + 1) * image.width));
  return rows;
}

MultiChannelRecording synth(std::uint64_t seed, double seconds, int channels = 4) {
  ingest::SynthConfig cfg;
  cfg.seed = seed;
  cfg.duration_s = seconds;
  cfg.n_channels = channels;
  return ingest::synthesize(cfg);
}

}  // namespace

TEST_CASE(".tsim encoding") {
  SUBCASE("1x1 is 19 bytes with the documented header") {
    const auto bytes = encode_matrix(ImageMatrix(1, 1, 0.0f));
    REQUIRE(bytes.size() == 19);
    CHECK(std::string(bytes.begin(), bytes.begin() + 4) == "TSIM");
    CHECK(bytes[4] == 1);
    CHECK(bytes[5] == 0);
    CHECK(bytes[6] == 1);
    CHECK(bytes[7] == 1);
    CHECK(bytes[11] == 1);
  }
  SUBCASE("little-endian payload") {
    const auto bytes = encode_matrix(ImageMatrix(1, 2, std::vector<float>{1.0f, -2.0f}));
    REQUIRE(bytes.size() == kTsimHeaderBytes + 8);
    // 1.0f = 0x3f800000, -2.0f = 0xc0000000
    CHECK(bytes[15] == 0x00);
    CHECK(bytes[18] == 0x3f);
    CHECK(bytes[17] == 0x80);
    CHECK(bytes[22] == 0xc0);
  }
  SUBCASE("round-trip is bit-identical") {
    TempDir dir("tsim");
    Xoshiro256 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
      const auto rows = 1 + rng.below(40);
      const auto cols = 1 + rng.below(40);
      ImageMatrix m(rows, cols);
      for (auto& v : m.values()) v = static_cast<float>(rng.normal() * 100.0);
      CHECK(decode_matrix(encode_matrix(m)) == m);
      write_matrix(m, dir / "m.tsim");
      CHECK(read_matrix(dir / "m.tsim") == m);
    }
  }
  SUBCASE("malformed files") {
    auto bytes = encode_matrix(ImageMatrix(2, 2, 1.0f));
    auto bad_magic = bytes;
    std::memcpy(bad_magic.data(), "XXXX", 4);
    CHECK_THROWS_AS(decode_matrix(bad_magic), FormatError);
    auto bad_version = bytes;
    bad_version[4] = 2;
    CHECK_THROWS_AS(decode_matrix(bad_version), FormatError);
    auto bad_dtype = bytes;
    bad_dtype[6] = 2;
    CHECK_THROWS_AS(decode_matrix(bad_dtype), FormatError);
    auto truncated = bytes;
    truncated.pop_back();
    CHECK_THROWS_AS(decode_matrix(truncated), FormatError);
    CHECK_THROWS_AS(decode_matrix(std::vector<std::uint8_t>(10, 0)), FormatError);
  }
}

TEST_CASE("PNG rendering") {
  TempDir dir("png");
  SUBCASE("constant image is mid-gray") {
    const ImageMatrix m(3, 4, 7.5f);
    CHECK(to_gray8(m) == std::vector<std::uint8_t>(12, 128));
    write_png(m, dir / "c.png");
    for (const auto& row : read_gray_png(dir / "c.png")) CHECK(row == std::vector<std::uint8_t>(4, 128));
  }
  SUBCASE("min and max map to 0 and 255, top to bottom") {
    const ImageMatrix m(2, 1, std::vector<float>{0.0f, 1.0f});
    CHECK(to_gray8(m) == std::vector<std::uint8_t>{0, 255});
    write_png(m, dir / "m.png");
    const auto rows = read_gray_png(dir / "m.png");
    REQUIRE(rows.size() == 2);
    CHECK(rows[0][0] == 0);
    CHECK(rows[1][0] == 255);
  }
  SUBCASE("intermediate values round") {
    const ImageMatrix m(1, 3, std::vector<float>{-1.0f, 0.0f, 3.0f});
    CHECK(to_gray8(m) == std::vector<std::uint8_t>{0, 64, 255});
  }
  SUBCASE("non-finite values are refused") {
    const ImageMatrix m(1, 2, std::vector<float>{0.0f, std::numeric_limits<float>::infinity()});
    CHECK_THROWS_AS(write_png(m, dir / "bad.png"), TransformError);
  }
}

TEST_CASE("index lines") {
  DatasetIndexRecord r;
  r.window_id = "rec-w00002";
  r.recording_id = "rec";
  r.start_s = 5.0;
  r.kind = RepresentationKind::mtf;
  r.image_path = "mtf/rec-w00002.tsim";
  r.labels = {0, 1, 0, 0, 1};
  r.znorm_flag_count = 2;
  const auto line = to_json_line(r);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(line.find("\"kind\":\"mtf\"") != std::string::npos);
  CHECK(parse_index_line(line) == r);
  CHECK_THROWS_AS(parse_index_line("{\"window_id\": 3}"), InputError);
  CHECK_THROWS_AS(parse_index_line("not json"), InputError);
}

TEST_CASE("build_dataset") {
  TempDir dir("build");
  RepresentationConfig cfg;
  cfg.output_size = 32;
  const std::vector kinds{RepresentationKind::mtf, RepresentationKind::cor};

  SUBCASE("no recordings") {
    const auto result = build_dataset(std::vector<MultiChannelRecording>{}, cfg, kinds, dir / "ds");
    CHECK(result.records.empty());
    CHECK(std::filesystem::exists(dir / "ds" / "index.jsonl"));
    CHECK(testing::read_text(dir / "ds" / "index.jsonl").empty());
  }
  SUBCASE("20 s recording, two kinds") {
    const std::vector recs{synth(1, 20.0)};
    const auto result = build_dataset(recs, cfg, kinds, dir / "ds");
    CHECK(result.window_count == 7);
    CHECK(result.failures.empty());
    const auto index = read_index(dir / "ds" / "index.jsonl");
    REQUIRE(index.size() == 14);
    CHECK(index == result.records);
    // Ordered by window, then by kind in canonical order.
    CHECK(index[0].kind == RepresentationKind::cor);
    CHECK(index[1].kind == RepresentationKind::mtf);
    CHECK(index[0].window_id == index[1].window_id);
    for (const auto& r : index) {
      const auto img = read_matrix(dir / "ds" / r.image_path);
      CHECK(img.rows() == 32);
      CHECK(img.cols() == 32);
    }
    CHECK(result.files_written == 14);
  }
  SUBCASE("labels match the windowing rule") {
    const std::vector recs{synth(2, 60.0)};
    const auto result = build_dataset(recs, cfg, std::vector{RepresentationKind::cor}, dir / "ds");
    const auto windows = preprocess::prepare_windows(recs[0], cfg);
    REQUIRE(result.records.size() == windows.size());
    std::array<std::size_t, kNumCategories> counts{};
    for (std::size_t k = 0; k < windows.size(); ++k) {
      CHECK(result.records[k].labels == windows[k].labels);
      for (std::size_t c = 0; c < kNumCategories; ++c) counts[c] += windows[k].labels[c];
    }
    CHECK(result.label_counts == counts);
  }
  SUBCASE("repeat builds and thread counts give identical bytes") {
    const std::vector recs{synth(3, 20.0), synth(4, 15.0)};
    build_dataset(recs, cfg, kinds, dir / "a", {false, 1});
    build_dataset(recs, cfg, kinds, dir / "b", {false, 1});
    build_dataset(recs, cfg, kinds, dir / "c", {true, 4});
    const auto a = testing::hash_tree(dir / "a", ".tsim");
    CHECK(a.size() == 2 * (7 + 5));
    CHECK(a == testing::hash_tree(dir / "b", ".tsim"));
    CHECK(a == testing::hash_tree(dir / "c", ".tsim"));
    CHECK(testing::read_text(dir / "a" / "index.jsonl") == testing::read_text(dir / "c" / "index.jsonl"));
    CHECK(testing::hash_tree(dir / "c", ".png").size() == a.size());
  }
  SUBCASE("manifest with a missing data file") {
    ingest::Manifest m;
    m.base_dir = dir.path();
    m.entries.push_back({"gone", "gone.csv", "csv", 250.0, {"a"}, {}});
    try {
      build_dataset(m, cfg, kinds, dir / "ds");
      FAIL("expected InputError");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("gone.csv") != std::string::npos);
    }
  }
  SUBCASE("a window that cannot be rendered is recorded and skipped") {
    // cor needs two channels; a one-channel recording fails every window.
    const std::vector recs{synth(5, 10.0, 1)};
    const auto result = build_dataset(recs, cfg, kinds, dir / "ds");
    CHECK(result.failures.size() == 3);
    CHECK(result.records.size() == 3);
    for (const auto& r : result.records) CHECK(r.kind == RepresentationKind::mtf);
  }
}
