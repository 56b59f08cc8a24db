#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace abba {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Malformed input file. Line and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, std::size_t column, const std::string& what);

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string file_;
    std::size_t line_;
    std::size_t column_;
};

class AlphabetExhausted : public Error {
public:
    AlphabetExhausted(std::size_t required, std::size_t available);

    std::size_t required() const noexcept { return required_; }
    std::size_t available() const noexcept { return available_; }

private:
    std::size_t required_;
    std::size_t available_;
};

/// A symbol that the model cannot map back to a center.
class DecodeError : public Error {
public:
    DecodeError(std::string symbol, std::size_t position);

    const std::string& symbol() const noexcept { return symbol_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string symbol_;
    std::size_t position_;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class Variant { apca, fapca };
enum class Digitizer { greedy, lloyd };

std::string_view to_string(Variant v) noexcept;
std::string_view to_string(Digitizer d) noexcept;
Variant parse_variant(std::string_view s);
Digitizer parse_digitizer(std::string_view s);

using TimeSeries = std::vector<double>;
using SymbolSequence = std::vector<std::string>;

/// Throws InvalidArgument if any sample is NaN or infinite.
void require_finite(std::span<const double> values, std::string_view what = "series");

/// One polygonal-chain segment. `second` is the increment for APCA and the
/// endpoint value for FAPCA; the variant lives on the owning container.
struct Piece {
    std::int64_t len = 1;
    double second = 0.0;

    friend bool operator==(const Piece&, const Piece&) = default;
};

struct ScaledTuple {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const ScaledTuple&, const ScaledTuple&) = default;
};

inline double squared_distance(ScaledTuple a, ScaledTuple b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Population standard deviation; two-pass for accuracy.
double population_stddev(std::span<const double> values);

// ---------------------------------------------------------------------------
// Alphabet
// ---------------------------------------------------------------------------

enum class AlphabetSource { builtin, ascii_extended, external_token_file };

class Alphabet {
public:
    Alphabet() = default;
    /// Throws InvalidArgument on empty or duplicate entries.
    Alphabet(std::vector<std::string> symbols, AlphabetSource source);

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    const std::string& operator[](std::size_t rank) const { return symbols_.at(rank); }
    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    AlphabetSource source() const noexcept { return source_; }

    std::optional<std::size_t> find(std::string_view symbol) const;
    /// True when every entry is exactly one byte, so symbol strings can be
    /// written without separators.
    bool single_char() const noexcept { return single_char_; }

    /// First `k` entries, same source tag.
    Alphabet prefix(std::size_t k) const;

private:
    std::vector<std::string> symbols_;
    AlphabetSource source_ = AlphabetSource::builtin;
    std::unordered_map<std::string, std::size_t> index_;
    bool single_char_ = true;
};

/// a..z, A..Z, then two-letter words over that order, then three-letter, ...
Alphabet alphabet_default(std::size_t k);

/// Printable non-space ASCII (0x21..0x7e), then pairs over that order.
Alphabet alphabet_ascii(std::size_t k);

/// Tokens in file order. Empty or duplicate tokens are rejected; the error
/// names the token and its 1-based line numbers.
Alphabet alphabet_from_tokens(std::span<const std::string> lines);

// ---------------------------------------------------------------------------
// Codebook and model
// ---------------------------------------------------------------------------

/// Cluster centers in scaled tuple space, ranked by descending cardinality.
///
/// With scl > 0 the scaled space is (scl*len/sigma_len, second/sigma_second).
/// With scl == 0 lengths do not enter the clustering; the stored x coordinate
/// then holds the unweighted mean of len/sigma_len so that lengths stay
/// decodable, and distance computations ignore it (see metric_center()).
struct Codebook {
    std::vector<ScaledTuple> centers;
    std::vector<std::size_t> cardinalities;
    double sigma_len = 1.0;
    double sigma_second = 1.0;
    double scl = 1.0;
    Variant variant = Variant::apca;

    std::size_t size() const noexcept { return centers.size(); }

    /// Center as seen by the clustering metric.
    ScaledTuple metric_center(std::size_t i) const;
    /// Denormalized (length, second) of center i.
    std::pair<double, double> decode(std::size_t i) const;
    /// Scale a raw piece into the clustering space.
    ScaledTuple scale(const Piece& p) const;

    /// Index of the nearest center; ties go to the lower (more frequent) rank.
    std::size_t nearest(ScaledTuple t) const;
};

struct AbbaModel {
    Variant variant = Variant::apca;
    double tol = 0.0;
    double alpha = 0.0;
    Digitizer digitizer = Digitizer::greedy;
    Codebook codebook;
    /// Exactly one symbol per center, symbol rank == center rank.
    Alphabet alphabet;
    /// First sample of every series seen at fit time, in input order.
    std::vector<double> initial_values;

    double scl() const noexcept { return codebook.scl; }

    const std::string& symbol(std::size_t center) const { return alphabet[center]; }
    /// Center index per symbol; throws DecodeError naming the first unknown.
    std::vector<std::size_t> encode(const SymbolSequence& symbols) const;
    SymbolSequence symbols_for(std::span<const std::size_t> centers) const;
};

/// Fixed field order, doubles with 17 significant digits.
std::string to_json(const AbbaModel& model);
/// Throws ParseError (file name "<json>" unless given) on malformed input.
AbbaModel model_from_json(std::string_view text, const std::string& source = "<json>");

}  // namespace abba
