#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace kravchuk {

/// "%.17g".
std::string format_double(double x);

/// Comma-separated table with '#'-prefixed metadata lines above the header and
/// '#'-prefixed footer lines below the data.
struct CsvTable {
    std::vector<std::string> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> footer;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    std::string str() const;
};

/// Writes to a temporary file in the same directory, then renames it over path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace kravchuk
