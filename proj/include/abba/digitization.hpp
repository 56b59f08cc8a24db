#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abba/compression.hpp"
#include "abba/core.hpp"

namespace abba {

struct ScaledPieces {
    std::vector<ScaledTuple> tuples;
    double sigma_len = 1.0;
    double sigma_second = 1.0;
};

/// Normalize lengths and second coordinates by their population standard
/// deviations (0 is replaced by 1) and weight lengths by `scl`.
ScaledPieces scale_tuples(std::span<const Piece> pieces, double scl);

/// Clustering output. `labels[i]` indexes `centers`; centers are in
/// creation order until rank_clusters() reorders them.
struct Clustering {
    std::vector<ScaledTuple> centers;
    std::vector<std::size_t> cardinalities;
    std::vector<std::size_t> labels;
    /// Lloyd only: SSE after every assignment step.
    std::vector<double> sse_history;
    std::size_t iterations = 0;
};

double sse(std::span<const ScaledTuple> tuples, const Clustering& c);

struct GreedyOptions {
    /// Stop each scan once the norm gap exceeds alpha. Turning it off
    /// scans every remaining point and yields the same groups.
    bool early_termination = true;
};

/// Sorting-based aggregation: points sorted by Euclidean norm; each
/// unassigned point in that order starts a group that absorbs every
/// unassigned point within `alpha` of it. Centers are group means.
Clustering aggregate_greedy(std::span<const ScaledTuple> tuples, double alpha, GreedyOptions opts = {});

struct LloydOptions {
    std::size_t max_iterations = 300;
};

/// Mean-update iteration from greedy distance-squared-weighted seeding.
/// Throws InvalidArgument if k exceeds the number of distinct tuples.
Clustering aggregate_lloyd(std::span<const ScaledTuple> tuples, std::size_t k, std::uint64_t seed,
                           LloydOptions opts = {});

/// Reorders clusters by descending cardinality, ties by creation order,
/// and relabels accordingly.
void rank_clusters(Clustering& c);

struct FitInput {
    std::vector<CompressionResult> series;
    double scl = 1.0;
    Digitizer digitizer = Digitizer::greedy;
    double alpha = 0.1;
    std::size_t k = 0;
    std::uint64_t seed = 0;
};

struct FitResult {
    AbbaModel model;
    /// One symbol string per input series, length == its piece count.
    std::vector<SymbolSequence> symbols;
    /// Ranked center index per piece, per series.
    std::vector<std::vector<std::size_t>> labels;
    /// Scaled tuples of all series, concatenated in input order.
    std::vector<ScaledTuple> tuples;
};

/// Joint fit over every series in `input`: tuples are concatenated before
/// clustering so that all series share one codebook. Symbols follow the
/// clusters' membership; throws AlphabetExhausted if `alphabet` is too small.
FitResult fit(const FitInput& input, const Alphabet& alphabet);

/// Symbolize a new series against a frozen model: compress with the model's
/// variant, scale with the stored sigmas and scl, pick the nearest center.
SymbolSequence transform(const AbbaModel& model, std::span<const double> series, double tol);

/// Same as transform() for already-compressed pieces.
std::vector<std::size_t> assign_nearest(const AbbaModel& model, std::span<const Piece> pieces);

}  // namespace abba
