#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omx::cli {

/// Column-oriented text table; an empty cell means "absent".
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of the named column, if present.
  [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
  /// Cell as a number; nullopt when empty or not numeric.
  [[nodiscard]] std::optional<double> number(std::size_t row, std::size_t col) const;
};

/// 17 significant digits, '.' decimal, independent of the C locale.
[[nodiscard]] std::string format_double(double v);
[[nodiscard]] std::string format_bool(bool b);

/// RFC 4180: CRLF is not required, but fields holding ',', '"' or newlines are quoted.
[[nodiscard]] std::string to_csv(const Table& table);

/// Throws MalformedData on unbalanced quotes or ragged rows.
[[nodiscard]] Table parse_csv(std::string_view text);

/// Rows as an array of objects; empty cells become null, numeric cells numbers.
[[nodiscard]] std::string to_json_rows(const Table& table);

}  // namespace omx::cli
