#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abba/core.hpp"

namespace abba {

/// Output of the greedy polygonal-chain partition.
struct CompressionResult {
    Variant variant = Variant::apca;
    std::vector<Piece> pieces;
    /// Sample values at the N+1 breakpoints, knots.front() == t0.
    std::vector<double> knots;
    double t0 = 0.0;
    std::size_t n = 0;
    double tol = 0.0;

    /// Breakpoint indices i_0 = 0 < i_1 < ... < i_N = n-1.
    std::vector<std::int64_t> breakpoints() const;
};

/// Sum of squared deviations of series[start..end] from the chord joining
/// (start, series[start]) and (end, series[end]), evaluated directly.
double chord_residual(std::span<const double> series, std::size_t start, std::size_t end);

/// Greedy partition where each piece is extended while
///   sum_{i=start}^{end} (chord(i) - t_i)^2 <= (end - start - 1) * tol^2
/// holds. Pieces store (len, increment).
CompressionResult compress_apca(std::span<const double> series, double tol);

/// Same partition as compress_apca; pieces store (len, endpoint value).
CompressionResult compress_fapca(std::span<const double> series, double tol);

CompressionResult compress(std::span<const double> series, double tol, Variant variant);

/// Piecewise linear interpolation through the stored knots; length n.
TimeSeries reconstruct_chain(const CompressionResult& result);

/// Linear interpolation of `len` steps from `from` to `to`, appending the
/// points after `from` (the last appended value is exactly `to`).
void append_segment(TimeSeries& out, double from, double to, std::int64_t len);

/// Optional preprocessing: (x - mean) / population stddev. A constant series
/// maps to all zeros.
TimeSeries znormalize(std::span<const double> series);

}  // namespace abba
