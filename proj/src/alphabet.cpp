#include "abba/core.hpp"

#include <cmath>
#include <map>
#include <numeric>

namespace abba {

ParseError::ParseError(std::string file, std::size_t line, std::size_t column, const std::string& what)
    : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      file_(std::move(file)),
      line_(line),
      column_(column) {}

AlphabetExhausted::AlphabetExhausted(std::size_t required, std::size_t available)
    : Error("alphabet exhausted: " + std::to_string(required) + " clusters require " +
            std::to_string(required) + " symbols, alphabet has " + std::to_string(available)),
      required_(required),
      available_(available) {}

DecodeError::DecodeError(std::string symbol, std::size_t position)
    : Error("unknown symbol '" + symbol + "' at position " + std::to_string(position)),
      symbol_(std::move(symbol)),
      position_(position) {}

std::string_view to_string(Variant v) noexcept {
    return v == Variant::apca ? "apca" : "fapca";
}

std::string_view to_string(Digitizer d) noexcept {
    return d == Digitizer::greedy ? "greedy" : "lloyd";
}

Variant parse_variant(std::string_view s) {
    if (s == "apca") return Variant::apca;
    if (s == "fapca") return Variant::fapca;
    throw InvalidArgument("unknown variant '" + std::string(s) + "' (expected apca or fapca)");
}

Digitizer parse_digitizer(std::string_view s) {
    if (s == "greedy") return Digitizer::greedy;
    if (s == "lloyd") return Digitizer::lloyd;
    throw InvalidArgument("unknown digitizer '" + std::string(s) + "' (expected greedy or lloyd)");
}

void require_finite(std::span<const double> values, std::string_view what) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidArgument(std::string(what) + ": non-finite sample at index " + std::to_string(i));
        }
    }
}

double population_stddev(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / n);
}

Alphabet::Alphabet(std::vector<std::string> symbols, AlphabetSource source)
    : symbols_(std::move(symbols)), source_(source) {
    index_.reserve(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto& s = symbols_[i];
        if (s.empty()) throw InvalidArgument("alphabet: empty symbol at rank " + std::to_string(i));
        if (!index_.emplace(s, i).second) {
            throw InvalidArgument("alphabet: duplicate symbol '" + s + "' at ranks " +
                                  std::to_string(index_.at(s)) + " and " + std::to_string(i));
        }
        if (s.size() != 1) single_char_ = false;
    }
}

std::optional<std::size_t> Alphabet::find(std::string_view symbol) const {
    auto it = index_.find(std::string(symbol));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Alphabet Alphabet::prefix(std::size_t k) const {
    if (k > symbols_.size()) throw AlphabetExhausted(k, symbols_.size());
    return Alphabet({symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(k)}, source_);
}

namespace {

// Words of increasing length over `base`, each length block in
// lexicographic order relative to the order of `base`.
std::vector<std::string> enumerate_words(std::string_view base, std::size_t k) {
    std::vector<std::string> out;
    out.reserve(k);
    const std::size_t b = base.size();
    std::vector<std::size_t> digits;
    for (std::size_t width = 1; out.size() < k; ++width) {
        digits.assign(width, 0);
        for (;;) {
            std::string word(width, ' ');
            for (std::size_t i = 0; i < width; ++i) word[i] = base[digits[i]];
            out.push_back(std::move(word));
            if (out.size() == k) break;
            std::size_t pos = width;
            while (pos > 0 && ++digits[pos - 1] == b) {
                digits[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;  // every word of this width emitted
        }
    }
    return out;
}

}  // namespace

Alphabet alphabet_default(std::size_t k) {
    if (k == 0) throw InvalidArgument("alphabet_default: k must be positive");
    static constexpr std::string_view letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    return Alphabet(enumerate_words(letters, k), AlphabetSource::builtin);
}

Alphabet alphabet_ascii(std::size_t k) {
    if (k == 0) throw InvalidArgument("alphabet_ascii: k must be positive");
    std::string base;
    for (char c = 0x21; c <= 0x7e; ++c) base.push_back(c);
    return Alphabet(enumerate_words(base, k), AlphabetSource::ascii_extended);
}

Alphabet alphabet_from_tokens(std::span<const std::string> lines) {
    if (lines.empty()) throw InvalidArgument("token list is empty");
    std::map<std::string_view, std::size_t> first_line;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& tok = lines[i];
        if (tok.empty()) throw InvalidArgument("empty token on line " + std::to_string(i + 1));
        auto [it, inserted] = first_line.emplace(tok, i + 1);
        if (!inserted) {
            throw InvalidArgument("duplicate token '" + tok + "' on lines " + std::to_string(it->second) +
                                  " and " + std::to_string(i + 1));
        }
    }
    return Alphabet({lines.begin(), lines.end()}, AlphabetSource::external_token_file);
}

}  // namespace abba
