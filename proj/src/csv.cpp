#include "csv.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nmoo::csv {

auto escape(std::string const& field) -> std::string
{
    if (field.find_first_of(",\"\r\n") == std::string::npos) { return field; }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') { out += '"'; }
        out += c;
    }
    out += '"';
    return out;
}

auto format_row(Row const& row) -> std::string
{
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) { line += ','; }
        line += escape(row[i]);
    }
    line += "\r\n";
    return line;
}

auto number(double value) -> std::string
{
    return fmt::format("{}", value);
}

auto to_double(std::string const& text) -> double
{
    double value = 0.0;
    auto const* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) { throw std::runtime_error(fmt::format("not a number: '{}'", text)); }
    return value;
}

void write(std::filesystem::path const& file, Row const& header, std::vector<Row> const& rows)
{
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) { throw std::runtime_error(fmt::format("cannot write {}", file.string())); }
    out << format_row(header);
    for (auto const& row : rows) { out << format_row(row); }
}

auto parse(std::string const& text) -> std::vector<Row>
{
    std::vector<Row> rows;
    Row row;
    std::string field;
    bool quoted = false;
    bool row_open = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char const c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            quoted = true;
            row_open = true;
            break;
        case ',':
            row.push_back(std::move(field));
            field.clear();
            row_open = true;
            break;
        case '\r':
            break;
        case '\n':
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            row_open = false;
            break;
        default:
            field += c;
            row_open = true;
        }
    }
    if (row_open) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

auto read(std::filesystem::path const& file) -> std::vector<Row>
{
    std::ifstream in(file, std::ios::binary);
    if (!in) { throw std::runtime_error(fmt::format("cannot read {}", file.string())); }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

} // namespace nmoo::csv
