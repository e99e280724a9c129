#pragma once

#include "afc/model.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace afc {

// Shortest round-trip decimal representation via std::to_chars: byte-stable
// across runs and locales.
std::string format_double(double value);

// Strict '.'-decimal parse of a whole field; throws on anything else.
double parse_double_field(std::string_view field, std::size_t line_number);

// Reads an observation file: UTF-8, header exactly "x,y", one x,y pair per
// line.  Malformed rows and rows with x <= 0 raise errors naming the
// 1-based line; with drop_bad_rows they are skipped and counted instead.
std::vector<Observation> read_observations_csv(const std::string& path,
                                               bool drop_bad_rows = false,
                                               std::size_t* n_dropped = nullptr);

void write_observations_csv(const std::string& path, std::span<const Observation> draws);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace afc
