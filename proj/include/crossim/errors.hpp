#pragma once

#include <stdexcept>
#include <string>

namespace crossim {

/// Invalid configuration: bad file syntax, out-of-range parameter, unknown
/// backend. Mapped to exit code 2 by the CLI.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or missing data: malformed artifacts, unknown scenario ids,
/// empty samples. Mapped to exit code 3 by the CLI.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace crossim
