#pragma once

// RFC-4180 helpers shared by the runner.

#include <filesystem>
#include <string>
#include <vector>

namespace nmoo::csv {

using Row = std::vector<std::string>;

[[nodiscard]] auto escape(std::string const& field) -> std::string;
[[nodiscard]] auto format_row(Row const& row) -> std::string; // CRLF-terminated
/// Shortest representation that round-trips to the same double.
[[nodiscard]] auto number(double value) -> std::string;
[[nodiscard]] auto to_double(std::string const& text) -> double;

void write(std::filesystem::path const& file, Row const& header, std::vector<Row> const& rows);
[[nodiscard]] auto read(std::filesystem::path const& file) -> std::vector<Row>;
[[nodiscard]] auto parse(std::string const& text) -> std::vector<Row>;

} // namespace nmoo::csv
