#ifndef SIGSCOPE_CSV_HPP
#define SIGSCOPE_CSV_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace sigscope::csv {

/// One non-empty CSV line; line_no is 1-based within the source file.
struct Row {
  std::size_t line_no = 0;
  std::vector<std::string> cells;
};

/// Splits on commas and trims surrounding whitespace from every cell.
std::vector<std::string> split(const std::string& line);

/// Parses a finite double. Returns false for malformed text, trailing
/// garbage, NaN, or infinity.
bool parse_double(const std::string& cell, double& out);

/// Parses a non-negative integer.
bool parse_int(const std::string& cell, long& out);

/// Shortest representation that round-trips a double exactly.
std::string format_double(double value);

/// Reads all non-empty lines of a CSV file. `context` prefixes error
/// messages (e.g. "ingest"). Throws DataError when the file cannot be read.
std::vector<Row> load(const std::string& path, const std::string& context);

/// True when the row looks like a column header: it has at least two cells
/// and the second one is not numeric.
bool looks_like_header(const Row& row);

} // namespace sigscope::csv

#endif
