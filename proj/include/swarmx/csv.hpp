#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace swarmx {

// Shortest decimal form that round-trips the exact double.
std::string format_double(double v);

std::vector<std::string> split_csv_line(std::string_view line);

// Strict numeric parsers; throw std::runtime_error naming the offending cell.
double parse_double(std::string_view cell);
long long parse_int(std::string_view cell);
std::uint64_t parse_u64(std::string_view cell);

// Reads all non-empty lines of a CSV file, checks the header matches, and
// returns the data rows split into cells.
std::vector<std::vector<std::string>> read_csv_rows(const std::string& path,
                                                    const std::string& expected_header);

} // namespace swarmx
