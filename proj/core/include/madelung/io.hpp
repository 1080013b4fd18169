#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace madelung {

enum class OutputFormat { Csv, Json };

// One output table; cells are doubles (formatted with 17 significant digits
// in CSV, so round-trips are lossless) or plain strings.
using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

// "%.17g" rendering used for all CSV numbers.
std::string format_double(double v);

// Shorter "%.12g" rendering for file names and script labels.
std::string format_label(double v);

// Writes <dir>/<basename>.csv or .json (array of objects, same field names).
// UTF-8, LF endings, no timestamps: identical input gives identical bytes.
// Returns the path written.
std::filesystem::path write_table(const std::filesystem::path& dir, const std::string& basename,
                                  const Table& table, OutputFormat format);

// Writes an arbitrary text file with LF endings.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace madelung
