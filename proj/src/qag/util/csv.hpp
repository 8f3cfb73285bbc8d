#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace qag::util {

/// 17-significant-digit decimal form of x; round-trips exactly and is
/// byte-stable across runs.
std::string format_double(double x);

void write_csv_row(std::ostream& os, std::span<const std::string> cells);
void write_csv_row(std::ostream& os, std::span<const double> values);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Parse a numeric CSV with one header row. Throws std::runtime_error on
/// ragged rows or non-numeric cells.
CsvTable read_csv(const std::string& path);

}  // namespace qag::util
