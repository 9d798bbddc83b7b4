#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace collarml::csv {

// Minimal CSV support: comma-separated, no quoting (none of our formats
// need it), '#' comment lines and blank lines skipped.

struct Row {
    std::size_t line_number = 0;  // 1-based line in the file
    std::vector<std::string> fields;
};

std::vector<std::string> split_fields(std::string_view line);

// Reads all non-empty, non-comment rows. Throws DataError if the file
// cannot be opened.
std::vector<Row> read_file(const std::string& path);

void write_file(const std::string& path, const std::vector<std::vector<std::string>>& rows);

// Fixed-precision float formatting used by all writers so round-trips are
// byte-stable.
std::string format_double(double v);

}  // namespace collarml::csv
