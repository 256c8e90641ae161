#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace quench {

/// Shortest decimal text that reads back to exactly `v`.
std::string format_double(double v);

/// Write a file by streaming into a sibling temporary and renaming it over
/// `path`, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

/// Minimal CSV table reader: first line is the header, fields are split on
/// commas (no quoting).
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] int column(const std::string& name) const;  // -1 if absent
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace quench
