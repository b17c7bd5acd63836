#pragma once

#include <stdexcept>
#include <string>

namespace tsimg {

/// Invalid configuration or command-line parameters.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unreadable, missing or malformed input data (manifests, CSV recordings).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A .tsim file that does not follow the binary layout.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A transform could not produce a valid image for the given input.
class TransformError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace tsimg
