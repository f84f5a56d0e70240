#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace omx::cli {

/// Failure reading or writing a file (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration that cannot be used (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data file that is not in the expected shape.
class MalformedData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace omx::cli
