#include "afc/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace afc {

std::string format_double(double value) {
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) throw std::runtime_error("failed to format a double");
    return std::string(buffer, ptr);
}

double parse_double_field(std::string_view field, std::size_t line_number) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw std::runtime_error("line " + std::to_string(line_number) +
                                 ": not a number: '" + std::string(field) + "'");
    return value;
}

namespace {

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

} // namespace

std::vector<Observation> read_observations_csv(const std::string& path, bool drop_bad_rows,
                                               std::size_t* n_dropped) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || strip_cr(line).empty())
        throw std::runtime_error(path + ": empty file");
    if (strip_cr(line) != "x,y")
        throw std::runtime_error(path + ": line 1: expected header 'x,y'");

    std::vector<Observation> data;
    std::size_t dropped = 0;
    std::size_t line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        const std::string_view row = strip_cr(line);
        if (row.empty()) continue;
        try {
            const std::size_t comma = row.find(',');
            if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
                throw std::runtime_error("line " + std::to_string(line_number) +
                                         ": expected exactly two comma-separated fields");
            Observation obs;
            obs.x = parse_double_field(row.substr(0, comma), line_number);
            obs.y = parse_double_field(row.substr(comma + 1), line_number);
            if (!(std::isfinite(obs.x) && obs.x > 0.0))
                throw std::runtime_error("line " + std::to_string(line_number) +
                                         ": x must be positive and finite");
            if (!std::isfinite(obs.y))
                throw std::runtime_error("line " + std::to_string(line_number) +
                                         ": y must be finite");
            data.push_back(obs);
        } catch (const std::runtime_error&) {
            if (!drop_bad_rows) throw;
            ++dropped;
        }
    }
    if (n_dropped) *n_dropped = dropped;
    return data;
}

void write_observations_csv(const std::string& path, std::span<const Observation> draws) {
    std::string out = "x,y\n";
    for (const auto& obs : draws) {
        out += format_double(obs.x);
        out += ',';
        out += format_double(obs.y);
        out += '\n';
    }
    write_text_file(path, out);
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("failed while writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace afc
