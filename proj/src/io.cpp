#include "abba/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace abba::io {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        pos = nl + 1;
    }
    return lines;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    for (;;) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(pos)));
            return cells;
        }
        cells.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
}

bool parse_double(std::string_view cell, double& out) {
    if (cell.empty()) return false;
    if (cell.front() == '+') cell.remove_prefix(1);
    const char* end = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(cell.data(), end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace

SeriesTable parse_series_csv(std::string_view text, const std::string& source) {
    auto lines = split_lines(text);
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError(source, 1, 1, "empty input");

    SeriesTable table;
    std::size_t first = 0;
    {
        const auto cells = split_cells(lines[0]);
        double dummy = 0.0;
        bool all_numeric = true;
        for (auto c : cells) all_numeric = all_numeric && parse_double(c, dummy);
        if (!all_numeric) {
            for (auto c : cells) table.header.emplace_back(c);
            first = 1;
        }
    }
    std::size_t width = table.header.size();
    for (std::size_t li = first; li < lines.size(); ++li) {
        const auto cells = split_cells(lines[li]);
        if (width == 0) width = cells.size();
        if (cells.size() != width) {
            throw ParseError(source, li + 1, std::min(cells.size(), width) + 1,
                             "expected " + std::to_string(width) + " columns, found " + std::to_string(cells.size()));
        }
        if (table.columns.empty()) table.columns.resize(width);
        for (std::size_t ci = 0; ci < cells.size(); ++ci) {
            double v = 0.0;
            if (!parse_double(cells[ci], v)) {
                throw ParseError(source, li + 1, ci + 1, "not a number: '" + std::string(cells[ci]) + "'");
            }
            if (!std::isfinite(v)) throw ParseError(source, li + 1, ci + 1, "non-finite value");
            table.columns[ci].push_back(v);
        }
    }
    if (table.columns.empty()) throw ParseError(source, lines.size(), 1, "no data rows");
    return table;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error("failed writing " + path);
}

SeriesTable read_series_csv(const std::string& path) {
    return parse_series_csv(read_file(path), path);
}

std::string format_series_csv(std::span<const TimeSeries> columns, std::span<const std::string> header) {
    std::string out;
    if (!header.empty()) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) out += ',';
            out += header[i];
        }
        out += '\n';
    }
    std::size_t rows = 0;
    for (const auto& c : columns) rows = std::max(rows, c.size());
    char buf[40];
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            if (r < columns[c].size()) {
                std::snprintf(buf, sizeof buf, "%.17g", columns[c][r]);
                out += buf;
            }
        }
        out += '\n';
    }
    return out;
}

std::string format_symbols(std::span<const SymbolSequence> sequences, const Alphabet& alphabet) {
    const bool joined = alphabet.single_char();
    std::string out;
    for (const auto& seq : sequences) {
        for (std::size_t i = 0; i < seq.size(); ++i) {
            if (i && !joined) out += ' ';
            out += seq[i];
        }
        out += '\n';
    }
    return out;
}

std::vector<SymbolSequence> parse_symbols(std::string_view text, const Alphabet& alphabet, const std::string& source) {
    auto lines = split_lines(text);
    if (lines.empty() || (lines.size() == 1 && lines[0].empty())) throw ParseError(source, 1, 1, "empty input");
    const bool joined = alphabet.single_char();
    std::vector<SymbolSequence> out;
    for (const auto& line : lines) {
        SymbolSequence seq;
        if (joined) {
            for (char c : line) seq.emplace_back(1, c);
        } else {
            std::size_t pos = 0;
            while (pos < line.size()) {
                std::size_t sp = line.find(' ', pos);
                if (sp == std::string::npos) sp = line.size();
                if (sp > pos) seq.emplace_back(line.substr(pos, sp - pos));
                pos = sp + 1;
            }
        }
        out.push_back(std::move(seq));
    }
    return out;
}

}  // namespace abba::io
