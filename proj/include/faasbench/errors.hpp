#pragma once

#include <stdexcept>
#include <string>

namespace faasbench {

// User-facing error taxonomy; the CLI maps these to exit codes
// (config/input -> 2, io -> 3).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace faasbench
