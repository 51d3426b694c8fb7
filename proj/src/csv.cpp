#include "polytree/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>

namespace polytree {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(std::string_view(line).substr(start, comma == std::string::npos ? comma : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

bool is_missing(const std::string& cell) {
    return cell.empty() || cell == "NA" || cell == "na" || cell == "NaN" || cell == "nan" || cell == "NAN";
}

std::optional<double> parse_number(const std::string& cell) {
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (begin != end && *begin == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

}  // namespace

SampleMatrix read_csv(std::istream& in, const CsvOptions& options) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_of;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        rows.push_back(split(line));
        line_of.push_back(line_no);
    }
    if (rows.empty()) throw DataError("input is empty");

    bool header = false;
    if (options.header) {
        header = *options.header;
    } else {
        for (const auto& cell : rows.front()) {
            if (!is_missing(cell) && !parse_number(cell)) header = true;
        }
    }

    const std::size_t p = rows.front().size();
    std::vector<std::string> names;
    for (std::size_t j = 0; j < p; ++j) {
        names.push_back(header && !rows.front()[j].empty() ? rows.front()[j] : "X" + std::to_string(j + 1));
    }
    const std::size_t first = header ? 1 : 0;
    const std::size_t n = rows.size() - first;

    for (std::size_t r = first; r < rows.size(); ++r) {
        if (rows[r].size() != p) {
            throw DataError(fmt::format("line {}: expected {} fields, found {}", line_of[r], p, rows[r].size()));
        }
        for (std::size_t j = 0; j < p; ++j) {
            if (is_missing(rows[r][j])) {
                throw DataError(fmt::format("missing value in column '{}' at line {}", names[j], line_of[r]));
            }
        }
    }

    std::vector<double> values(n * p);
    for (std::size_t j = 0; j < p; ++j) {
        std::optional<std::size_t> text_row;
        for (std::size_t r = first; r < rows.size() && !text_row; ++r) {
            if (!parse_number(rows[r][j])) text_row = r;
        }
        if (!text_row) {
            for (std::size_t r = first; r < rows.size(); ++r) {
                const double v = *parse_number(rows[r][j]);
                if (!std::isfinite(v)) {
                    throw DataError(fmt::format("non-finite value in column '{}' at line {}", names[j], line_of[r]));
                }
                values[j * n + (r - first)] = v;
            }
            continue;
        }
        if (!options.ordinal_encode) {
            throw DataError(fmt::format("column '{}' is not numeric (line {}: '{}'); use --ordinal-encode", names[j],
                                        line_of[*text_row], rows[*text_row][j]));
        }
        std::unordered_map<std::string, double> levels;
        for (std::size_t r = first; r < rows.size(); ++r) {
            const auto [it, inserted] = levels.try_emplace(rows[r][j], static_cast<double>(levels.size() + 1));
            values[j * n + (r - first)] = it->second;
        }
    }
    return SampleMatrix(n, p, std::move(values), std::move(names));
}

SampleMatrix read_csv_file(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    return read_csv(in, options);
}

void write_csv(std::ostream& out, const SampleMatrix& data) {
    for (std::size_t j = 0; j < data.p(); ++j) out << (j ? "," : "") << data.name(j);
    out << '\n';
    for (std::size_t i = 0; i < data.n(); ++i) {
        for (std::size_t j = 0; j < data.p(); ++j) out << (j ? "," : "") << fmt::format("{:.17g}", data(i, j));
        out << '\n';
    }
}

}  // namespace polytree
