#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abba/core.hpp"

namespace abba::io {

/// One series per column. The first row is a header if any of its cells is
/// not a number.
struct SeriesTable {
    std::vector<std::string> header;
    std::vector<TimeSeries> columns;
};

/// Throws ParseError with 1-based line and column on malformed input.
SeriesTable parse_series_csv(std::string_view text, const std::string& source);
SeriesTable read_series_csv(const std::string& path);

/// Ragged columns are padded with empty cells.
std::string format_series_csv(std::span<const TimeSeries> columns, std::span<const std::string> header = {});

/// One line per sequence; separators only when some symbol is longer than
/// one byte.
std::string format_symbols(std::span<const SymbolSequence> sequences, const Alphabet& alphabet);

/// Inverse of format_symbols. Throws ParseError on an empty file.
std::vector<SymbolSequence> parse_symbols(std::string_view text, const Alphabet& alphabet, const std::string& source);

/// One token per line; a trailing newline does not produce an empty token.
std::vector<std::string> split_lines(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace abba::io
