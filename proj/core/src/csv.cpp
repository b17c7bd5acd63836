#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "tsimg/errors.hpp"
#include "tsimg/ingest.hpp"

namespace tsimg::ingest {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
  return out;
}

MultiChannelRecording read_csv(const std::filesystem::path& path, double sample_rate_hz,
                               const std::vector<std::string>* expected, std::string recording_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open CSV file " + path.string());
  const std::string where = path.string();

  std::string line;
  if (!std::getline(in, line)) throw InputError(where + ": empty file, header row required");
  std::vector<std::string> header;
  for (auto f : split_fields(line)) header.emplace_back(trim(f));
  if (expected && header != *expected) {
    throw InputError(where + ": header '" + join(header) + "' does not match declared channels '" +
                     join(*expected) + "'");
  }

  MultiChannelRecording rec;
  rec.recording_id = recording_id.empty() ? path.stem().string() : std::move(recording_id);
  rec.sample_rate_hz = sample_rate_hz;
  for (const auto& name : header) rec.channels.push_back({name, {}});

  std::size_t row = 1;  // 1-based data row numbers; the header is row 0
  while (std::getline(in, line)) {
    if (trim(line).empty()) {
      ++row;
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw InputError(where + ": row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
                       " columns, expected " + std::to_string(header.size()));
    }
    for (std::size_t col = 0; col < fields.size(); ++col) {
      const auto cell = trim(fields[col]);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty() || !std::isfinite(value)) {
        throw InputError(where + ": non-numeric value '" + std::string(cell) + "' at row " +
                         std::to_string(row) + ", column " + std::to_string(col + 1) + " (" + header[col] + ")");
      }
      rec.channels[col].samples.push_back(value);
    }
    ++row;
  }
  check_recording(rec);
  return rec;
}

}  // namespace

MultiChannelRecording load_recording_csv(const std::filesystem::path& path, double sample_rate_hz,
                                         const std::vector<std::string>& channel_names,
                                         std::string recording_id) {
  return read_csv(path, sample_rate_hz, &channel_names, std::move(recording_id));
}

MultiChannelRecording load_recording_csv(const std::filesystem::path& path, double sample_rate_hz) {
  return read_csv(path, sample_rate_hz, nullptr, {});
}

void write_recording_csv(const MultiChannelRecording& recording, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write CSV file " + path.string());
  out << join(recording.channel_names()) << '\n';

  std::string line;
  char buf[32];
  for (std::size_t i = 0; i < recording.num_samples(); ++i) {
    line.clear();
    for (std::size_t c = 0; c < recording.channels.size(); ++c) {
      if (c) line += ',';
      const auto value = static_cast<float>(recording.channels[c].samples[i]);
      const auto res = std::to_chars(buf, buf + sizeof buf, value);
      line.append(buf, res.ptr);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw InputError("failed writing CSV file " + path.string());
}

}  // namespace tsimg::ingest
