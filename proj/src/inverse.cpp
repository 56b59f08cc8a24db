#include "abba/inverse.hpp"

#include <algorithm>
#include <cmath>

#include "abba/compression.hpp"

namespace abba {

std::vector<RealPiece> inverse_digitize(const AbbaModel& model, const SymbolSequence& symbols) {
    const auto centers = model.encode(symbols);
    std::vector<RealPiece> out;
    out.reserve(centers.size());
    for (std::size_t c : centers) {
        const auto [len, second] = model.codebook.decode(c);
        out.push_back({len, second});
    }
    return out;
}

std::vector<std::int64_t> round_lengths(std::span<const double> real_lengths) {
    std::vector<std::int64_t> out;
    out.reserve(real_lengths.size());
    double carry = 0.0;
    for (std::size_t j = 0; j < real_lengths.size(); ++j) {
        const double l = real_lengths[j];
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw InvalidArgument("round_lengths: length at position " + std::to_string(j) + " is not positive");
        }
        const double target = l + carry;
        // nearbyint honours the default round-half-to-even mode.
        double h = std::nearbyint(target);
        if (h < 1.0) h = 1.0;
        carry = target - h;
        out.push_back(static_cast<std::int64_t>(h));
    }
    return out;
}

ReconstructedPieces round_pieces(std::span<const RealPiece> pieces, double t0) {
    std::vector<double> lens;
    lens.reserve(pieces.size());
    for (const auto& p : pieces) lens.push_back(p.len);
    const auto rounded = round_lengths(lens);
    ReconstructedPieces out;
    out.t0 = t0;
    out.pieces.reserve(pieces.size());
    for (std::size_t j = 0; j < pieces.size(); ++j) out.pieces.push_back({rounded[j], pieces[j].second});
    return out;
}

std::vector<double> breakpoint_values(const ReconstructedPieces& rp, Variant variant) {
    std::vector<double> v{rp.t0};
    v.reserve(rp.pieces.size() + 1);
    for (const Piece& p : rp.pieces) v.push_back(variant == Variant::apca ? v.back() + p.second : p.second);
    return v;
}

namespace {

TimeSeries chain(std::span<const double> values, std::span<const std::int64_t> lens) {
    TimeSeries out{values.front()};
    for (std::size_t j = 0; j < lens.size(); ++j) append_segment(out, values[j], values[j + 1], lens[j]);
    return out;
}

std::vector<std::int64_t> lengths_of(const ReconstructedPieces& rp) {
    std::vector<std::int64_t> out;
    out.reserve(rp.pieces.size());
    for (const auto& p : rp.pieces) out.push_back(p.len);
    return out;
}

}  // namespace

TimeSeries chain_from_pieces(const ReconstructedPieces& rp, Variant variant) {
    return chain(breakpoint_values(rp, variant), lengths_of(rp));
}

TimeSeries inverse_symbolize(const AbbaModel& model, const SymbolSequence& symbols, double t0) {
    return chain_from_pieces(round_pieces(inverse_digitize(model, symbols), t0), model.variant);
}

double DriftProfile::max_value_drift() const {
    double m = 0.0;
    for (double d : value_drift) m = std::max(m, d);
    return m;
}

namespace {

DriftProfile compare(std::span<const double> orig_values, std::span<const std::int64_t> orig_lens,
                     std::span<const double> pert_values, std::span<const std::int64_t> pert_lens,
                     std::size_t position) {
    DriftProfile d;
    std::int64_t io = 0, ip = 0;
    for (std::size_t j = 0; j < orig_lens.size(); ++j) {
        io += orig_lens[j];
        ip += pert_lens[j];
        if (j > position) {
            d.value_drift.push_back(std::abs(pert_values[j + 1] - orig_values[j + 1]));
            d.index_shift.push_back(ip - io);
        }
    }
    const TimeSeries a = chain(orig_values, orig_lens);
    const TimeSeries b = chain(pert_values, pert_lens);
    const std::size_t overlap = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < overlap; ++i) d.max_series_deviation = std::max(d.max_series_deviation, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

PerturbationReport perturb_and_compare(const AbbaModel& model, const SymbolSequence& symbols, std::size_t position,
                                       const std::string& replacement, double t0) {
    if (position >= symbols.size()) {
        throw InvalidArgument("perturbation position " + std::to_string(position) + " outside sequence of length " +
                              std::to_string(symbols.size()));
    }
    if (!model.alphabet.find(replacement)) throw DecodeError(replacement, position);

    SymbolSequence perturbed = symbols;
    perturbed[position] = replacement;

    const auto orig = round_pieces(inverse_digitize(model, symbols), t0);
    const auto pert = round_pieces(inverse_digitize(model, perturbed), t0);
    const auto orig_lens = lengths_of(orig);
    const auto pert_lens = lengths_of(pert);

    PerturbationReport r;
    r.position = position;
    r.original = symbols[position];
    r.replacement = replacement;
    r.variant = model.variant;
    r.delta = pert.pieces[position].second - orig.pieces[position].second;

    const auto orig_values = breakpoint_values(orig, model.variant);
    const auto native_values = breakpoint_values(pert, model.variant);

    // The same symbol error under the other chaining rule.
    std::vector<double> counterpart = orig_values;
    if (model.variant == Variant::apca) {
        // Pinned values: only the perturbed breakpoint moves.
        counterpart[position + 1] = orig_values[position] + pert.pieces[position].second;
    } else {
        // Accumulated increments: the value error carries to every later breakpoint.
        const double shift = native_values[position + 1] - orig_values[position + 1];
        for (std::size_t j = position + 1; j < counterpart.size(); ++j) counterpart[j] += shift;
    }

    DriftProfile native = compare(orig_values, orig_lens, native_values, pert_lens, position);
    DriftProfile other = compare(orig_values, orig_lens, counterpart, pert_lens, position);
    if (model.variant == Variant::apca) {
        r.apca_style = std::move(native);
        r.fapca_style = std::move(other);
    } else {
        r.fapca_style = std::move(native);
        r.apca_style = std::move(other);
    }
    return r;
}

}  // namespace abba
