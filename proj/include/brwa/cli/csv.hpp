#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace brwa::cli {

/// Empty cell, number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

[[nodiscard]] Cell cell(const std::optional<double>& value);

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Comma-delimited, LF line endings, numbers as %.17g.
[[nodiscard]] std::string to_csv(const Table& table);

/// Array of row objects keyed by column name; empty cells become null.
[[nodiscard]] nlohmann::ordered_json to_json_rows(const Table& table);

[[nodiscard]] std::string format_number(double value);

/// Hex SHA-256 of a byte string.
[[nodiscard]] std::string sha256_hex(const std::string& bytes);

/// Writes `bytes` to `path` in binary mode; throws std::runtime_error on failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace brwa::cli
