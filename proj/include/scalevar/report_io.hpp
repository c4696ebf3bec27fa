#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace scalevar {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double x);

/// Header plus numeric rows, rendered with LF line endings.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string render() const;
};

/// Writes `content` to `path` through a temporary file and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace scalevar
