#pragma once

#include <stdexcept>
#include <string>

namespace morph {

// Invalid or unknown configuration value; message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input file, or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace morph
