#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "abba/core.hpp"

namespace abba {

/// A decoded piece before length rounding.
struct RealPiece {
    double len = 0.0;
    double second = 0.0;
};

struct ReconstructedPieces {
    std::vector<Piece> pieces;
    double t0 = 0.0;
};

/// Symbols to denormalized centers, order preserved. Throws DecodeError
/// naming the first unknown symbol and its position.
std::vector<RealPiece> inverse_digitize(const AbbaModel& model, const SymbolSequence& symbols);

/// Carry-forward rounding: h_j = round(l_j + e), e <- (l_j + e) - h_j, with
/// ties to even. A result below 1 is clamped to 1 and the clamp is charged
/// to the carry. Throws InvalidArgument on non-positive input.
std::vector<std::int64_t> round_lengths(std::span<const double> real_lengths);

ReconstructedPieces round_pieces(std::span<const RealPiece> pieces, double t0);

/// Breakpoint values of a rounded chain. APCA accumulates increments from
/// t0; FAPCA takes each piece's value as is. Result has size pieces + 1.
std::vector<double> breakpoint_values(const ReconstructedPieces& pieces, Variant variant);

/// Polygonal chain through the breakpoints; length 1 + sum of lengths.
TimeSeries chain_from_pieces(const ReconstructedPieces& pieces, Variant variant);

TimeSeries inverse_symbolize(const AbbaModel& model, const SymbolSequence& symbols, double t0);

/// Reconstruction change caused by replacing one symbol.
struct DriftProfile {
    /// |perturbed - original| breakpoint value for every breakpoint after
    /// the perturbed piece.
    std::vector<double> value_drift;
    /// Signed breakpoint index shift for the same breakpoints.
    std::vector<std::int64_t> index_shift;
    /// Largest |perturbed - original| over the overlapping time range.
    double max_series_deviation = 0.0;

    double max_value_drift() const;
};

struct PerturbationReport {
    std::size_t position = 0;
    std::string original;
    std::string replacement;
    /// Value change carried by the replacement in the model's own second
    /// coordinate (increment for APCA, endpoint value for FAPCA).
    double delta = 0.0;
    /// Model variant, i.e. which of the two profiles below is the model's
    /// actual reconstruction.
    Variant variant = Variant::apca;
    /// Decoded pieces chained by accumulating increments.
    DriftProfile apca_style;
    /// Decoded pieces chained with every breakpoint value pinned.
    DriftProfile fapca_style;
};

/// Replaces symbols[position] by `replacement` and compares reconstructions.
/// The model's decoded pieces are rendered under both chaining rules: the
/// model's own rule is its inverse_symbolize output, the other rule converts
/// the same decoded pieces (increments <-> endpoint values, relative to the
/// unperturbed chain) so both profiles describe the same symbol error.
PerturbationReport perturb_and_compare(const AbbaModel& model, const SymbolSequence& symbols, std::size_t position,
                                       const std::string& replacement, double t0);

}  // namespace abba
