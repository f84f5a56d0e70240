#include "omx/cli/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "omx/cli/io.hpp"

namespace omx::cli {
namespace {

bool needs_quotes(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::optional<double> to_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s == "nan" || s == "-nan") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<double> Table::number(std::size_t row, std::size_t col) const {
  if (row >= rows.size() || col >= rows[row].size()) return std::nullopt;
  return to_number(rows[row][col]);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // to_chars is locale independent; fixed precision keeps the output stable.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_bool(bool b) { return b ? "1" : "0"; }

std::string to_csv(const Table& table) {
  std::string out;
  auto emit_row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += needs_quotes(cells[i]) ? quote(cells[i]) : cells[i];
    }
    out += '\n';
  };
  emit_row(table.header);
  for (const auto& row : table.rows) emit_row(row);
  return out;
}

Table parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) throw MalformedData("stray quote inside an unquoted field");
      in_quotes = true;
      any = true;
    } else if (c == ',') {
      record.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
      }
      field.clear();
      record.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (in_quotes) throw MalformedData("unterminated quoted field");
  if (any || !field.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw MalformedData("no header row");

  Table t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size()) {
      throw MalformedData("row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                          " fields, header has " + std::to_string(t.header.size()));
    }
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

std::string to_json_rows(const Table& table) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      const std::string& cell = c < row.size() ? row[c] : std::string();
      const auto num = to_number(cell);
      if (cell.empty()) {
        obj[table.header[c]] = nullptr;
      } else if (num && std::isfinite(*num)) {
        obj[table.header[c]] = *num;
      } else {
        obj[table.header[c]] = cell;
      }
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

}  // namespace omx::cli
