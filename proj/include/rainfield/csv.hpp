#pragma once

#include <string>
#include <vector>

namespace rainfield {

/// One parsed CSV row plus its 1-based line number in the source file.
struct CsvRow {
    long line = 0;
    std::vector<std::string> fields;
};

/// Reads a comma-separated file: strips CR, skips blank lines and lines
/// starting with '#'. No quoting support; the file formats here never
/// need it.
std::vector<CsvRow> read_csv(const std::string& path);

std::vector<std::string> split_fields(const std::string& line);

double parse_double(const std::string& s, const std::string& context);

/// Fixed-decimal formatting used by all writers (deterministic output).
std::string format_fixed(double v, int decimals);
/// Shortest round-trip representation, for diagnostics and summaries.
std::string format_full(double v);

}  // namespace rainfield
