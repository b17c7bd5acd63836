#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <png.h>

#include "tsimg/errors.hpp"
#include "tsimg/export.hpp"

namespace tsimg::io {

namespace {

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::conditional_t<sizeof(T) == 2, std::uint16_t, std::uint8_t>>;
  const auto bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

template <typename U>
U get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(static_cast<U>(bytes[offset + i]) << (8 * i));
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_matrix(const ImageMatrix& image) {
  std::vector<std::uint8_t> out;
  out.reserve(kTsimHeaderBytes + 4 * image.size());
  out.insert(out.end(), kTsimMagic.begin(), kTsimMagic.end());
  put_le(out, kTsimVersion);
  put_le(out, kTsimFloat32);
  put_le(out, static_cast<std::uint32_t>(image.rows()));
  put_le(out, static_cast<std::uint32_t>(image.cols()));
  for (float v : image.values()) put_le(out, v);
  return out;
}

ImageMatrix decode_matrix(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kTsimHeaderBytes) {
    throw FormatError("tsim: truncated header: expected " + std::to_string(kTsimHeaderBytes) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  if (!std::equal(kTsimMagic.begin(), kTsimMagic.end(), bytes.begin())) throw FormatError("tsim: bad magic");
  const auto version = get_le<std::uint16_t>(bytes, 4);
  if (version != kTsimVersion) throw FormatError("tsim: unsupported version " + std::to_string(version));
  const auto dtype = bytes[6];
  if (dtype != kTsimFloat32) throw FormatError("tsim: unsupported dtype " + std::to_string(dtype));
  const auto rows = get_le<std::uint32_t>(bytes, 7);
  const auto cols = get_le<std::uint32_t>(bytes, 11);
  const std::uint64_t expected = kTsimHeaderBytes + 4ULL * rows * cols;
  if (bytes.size() != expected) {
    throw FormatError("tsim: payload size mismatch: expected " + std::to_string(expected) + " bytes, got " +
                      std::to_string(bytes.size()));
  }
  std::vector<float> values(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = std::bit_cast<float>(get_le<std::uint32_t>(bytes, kTsimHeaderBytes + 4 * i));
  }
  return ImageMatrix(rows, cols, std::move(values));
}

void write_matrix(const ImageMatrix& image, const std::filesystem::path& path) {
  if (!all_finite(image)) throw TransformError("write_matrix: non-finite value in " + path.string());
  const auto bytes = encode_matrix(image);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("failed writing " + path.string());
}

ImageMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_matrix(bytes);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> to_gray8(const ImageMatrix& image) {
  std::vector<std::uint8_t> out(image.size(), 128);
  if (image.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(image.values().begin(), image.values().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(hi > lo)) return out;
  const auto v = image.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * (v[i] - lo) / (hi - lo)));
  }
  return out;
}

void write_png(const ImageMatrix& image, const std::filesystem::path& path) {
  if (image.empty()) throw TransformError("write_png: empty image");
  if (!all_finite(image)) throw TransformError("write_png: non-finite value in " + path.string());
  const auto gray = to_gray8(image);

  std::FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw InputError("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw InputError("libpng failed writing " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(image.cols()), static_cast<png_uint_32>(image.rows()), 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t r = 0; r < image.rows(); ++r) {
    png_write_row(png, const_cast<png_bytep>(gray.data() + r * image.cols()));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(fp) != 0) throw InputError("failed writing " + path.string());
}

}  // namespace tsimg::io
