#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qci/sample.hpp"

namespace qci::io {

// Minimal RFC-4180-style CSV: quoted fields may contain commas, quotes
// (doubled) and newlines; the header row is always present.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

void write_csv(std::ostream& out, const CsvTable& table);
std::string to_csv_string(const CsvTable& table);

// 17 significant digits; round-trips exactly through strtod.
std::string format_double(double v);

// Loads the designated numeric column of a run-record file into a Sample.
// Errors carry row/column diagnostics; unknown columns list the available
// ones.
Sample load_sample_csv(const std::string& path, const std::string& column);

}  // namespace qci::io
