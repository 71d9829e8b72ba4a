#include "swarmx/csv.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace swarmx {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            break;
        }
        cells.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

double parse_double(std::string_view cell) {
    double out = 0.0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw std::runtime_error("malformed numeric cell: '" + std::string(cell) + "'");
    }
    return out;
}

long long parse_int(std::string_view cell) {
    long long out = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw std::runtime_error("malformed integer cell: '" + std::string(cell) + "'");
    }
    return out;
}

std::uint64_t parse_u64(std::string_view cell) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), out);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw std::runtime_error("malformed unsigned cell: '" + std::string(cell) + "'");
    }
    return out;
}

std::vector<std::vector<std::string>> read_csv_rows(const std::string& path,
                                                    const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header) {
        throw std::runtime_error("unexpected header in " + path + ": '" + line + "'");
    }

    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_csv_line(line));
    }
    return rows;
}

} // namespace swarmx
