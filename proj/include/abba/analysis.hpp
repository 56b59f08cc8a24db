#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abba/compression.hpp"
#include "abba/core.hpp"
#include "abba/inverse.hpp"

namespace abba {

struct Metrics {
    double mse = 0.0;
    double mae = 0.0;
    /// Empty when either side has zero variance over the overlap.
    std::optional<double> pearson;
    std::size_t compared = 0;
    /// reconstructed.size() - original.size()
    std::ptrdiff_t length_gap = 0;
};

/// Compares the overlapping prefix of both series.
Metrics metrics(std::span<const double> original, std::span<const double> reconstructed);

struct BoundContext {
    std::size_t n = 0;
    std::size_t pieces = 0;
    std::size_t clusters = 0;
    double tol = 0.0;
    double alpha = 0.0;
};

struct BoundReport {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool satisfied = false;
    BoundContext context;
};

/// satisfied <=> measured <= bound, with 1e-9 relative slack.
BoundReport make_report(std::string name, double measured, double bound, BoundContext ctx);

/// ||T - chain||^2 against (n - 1 - N) * tol^2.
BoundReport check_compression_bound(std::span<const double> series, const CompressionResult& result);

/// Three reports over scaled tuples and their (ranked) labels:
///   "max_dev2"    max ||center - tuple||^2        vs alpha^2
///   "sum_dev"     ||sum (center - tuple)||         vs 1e-9 * N
///   "sse"         sum ||center - tuple||^2         vs alpha^2 (N - k)
std::vector<BoundReport> check_digitization_bounds(std::span<const ScaledTuple> tuples, const Codebook& codebook,
                                                   std::span<const std::size_t> labels, double alpha);

/// Accumulated center-minus-truth deviations e_j, j = 1..N.
struct CumulativeErrorProfile {
    std::vector<ScaledTuple> scaled;
    std::vector<RealPiece> denormalized;
    /// max_j |e_j| / j per coordinate against alpha (scaled space).
    BoundReport scaled_len;
    BoundReport scaled_second;
    /// Same in data units: alpha * sigma_len / scl and alpha * sigma_second.
    BoundReport denorm_len;
    BoundReport denorm_second;
};

/// Throws InvalidArgument when symbols and pieces differ in length.
CumulativeErrorProfile cumulative_error_profile(const AbbaModel& model, const SymbolSequence& symbols,
                                                std::span<const Piece> original_pieces);

/// Empirical P(|e_j| >= h) against exp(-h^2 / (2 j alpha^2)) plus `sigmas`
/// binomial standard errors.
struct TailCheck {
    std::size_t j = 0;
    double h = 0.0;
    std::size_t samples = 0;
    std::size_t exceedances = 0;
    double empirical = 0.0;
    double bound = 0.0;
    double standard_error = 0.0;
    bool satisfied = false;
};

TailCheck tail_check(std::span<const double> deviations, std::size_t j, double h, double alpha, double sigmas = 3.0);

struct ZipfEntry {
    std::size_t rank = 0;
    std::string symbol;
    std::size_t frequency = 0;
    double log_rank = 0.0;
    double log_frequency = 0.0;
};

/// Frequencies in descending order, ties by first occurrence in the corpus.
/// Throws InvalidArgument on an empty corpus.
std::vector<ZipfEntry> zipf_profile(std::span<const SymbolSequence> corpus);

/// Header "rank,frequency,log_rank,log_frequency", natural logarithms.
std::string zipf_csv(std::span<const ZipfEntry> entries);

std::string to_json(const BoundReport& report);
std::string format_reports(std::span<const BoundReport> reports);

}  // namespace abba
