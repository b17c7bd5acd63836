#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "tsimg/model.hpp"
#include "tsimg/random.hpp"

namespace tsimg::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
  std::filesystem::path path_;
};

/// Gaussian series of the given length.
std::vector<double> random_series(Xoshiro256& rng, std::size_t n, double scale = 1.0);

/// channels x samples matrix of Gaussian values.
Field random_channels(Xoshiro256& rng, std::size_t channels, std::size_t samples);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Hex SHA-256 of every regular file below `root` whose extension matches, keyed by relative path.
std::vector<std::pair<std::string, std::string>> hash_tree(const std::filesystem::path& root,
                                                           const std::string& extension);

std::string read_text(const std::filesystem::path& path);

/// Runs a shell command, returning its exit status (not the raw wait status).
int run_command(const std::string& command);

}  // namespace tsimg::testing
