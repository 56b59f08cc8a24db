#include "abba/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "json.hpp"

namespace abba {

Metrics metrics(std::span<const double> original, std::span<const double> reconstructed) {
    if (original.empty() || reconstructed.empty()) throw InvalidArgument("metrics: empty series");
    Metrics m;
    m.compared = std::min(original.size(), reconstructed.size());
    m.length_gap = static_cast<std::ptrdiff_t>(reconstructed.size()) - static_cast<std::ptrdiff_t>(original.size());

    const double n = static_cast<double>(m.compared);
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < m.compared; ++i) {
        const double d = original[i] - reconstructed[i];
        m.mse += d * d;
        m.mae += std::abs(d);
        mean_a += original[i];
        mean_b += reconstructed[i];
    }
    m.mse /= n;
    m.mae /= n;
    mean_a /= n;
    mean_b /= n;

    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < m.compared; ++i) {
        const double a = original[i] - mean_a;
        const double b = reconstructed[i] - mean_b;
        saa += a * a;
        sbb += b * b;
        sab += a * b;
    }
    if (saa > 0.0 && sbb > 0.0) m.pearson = sab / std::sqrt(saa * sbb);
    return m;
}

BoundReport make_report(std::string name, double measured, double bound, BoundContext ctx) {
    BoundReport r;
    r.name = std::move(name);
    r.measured = measured;
    r.bound = bound;
    r.satisfied = measured <= bound + 1e-9 * std::abs(bound);
    r.context = ctx;
    return r;
}

BoundReport check_compression_bound(std::span<const double> series, const CompressionResult& result) {
    const TimeSeries chain = reconstruct_chain(result);
    if (chain.size() != series.size()) throw InvalidArgument("check_compression_bound: length mismatch");
    double err = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) err += (series[i] - chain[i]) * (series[i] - chain[i]);
    const std::size_t n = series.size();
    const std::size_t pieces = result.pieces.size();
    const double bound = static_cast<double>(n - 1 - pieces) * result.tol * result.tol;
    return make_report("compression", err, bound, {n, pieces, 0, result.tol, 0.0});
}

std::vector<BoundReport> check_digitization_bounds(std::span<const ScaledTuple> tuples, const Codebook& codebook,
                                                   std::span<const std::size_t> labels, double alpha) {
    if (tuples.size() != labels.size()) throw InvalidArgument("check_digitization_bounds: labels do not match tuples");
    double max_dev2 = 0.0, total = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const ScaledTuple c = codebook.metric_center(labels[i]);
        const double d2 = squared_distance(c, tuples[i]);
        max_dev2 = std::max(max_dev2, d2);
        total += d2;
        sx += c.x - tuples[i].x;
        sy += c.y - tuples[i].y;
    }
    const std::size_t n = tuples.size();
    const std::size_t k = codebook.size();
    const BoundContext ctx{0, n, k, 0.0, alpha};
    return {
        make_report("max_dev2", max_dev2, alpha * alpha, ctx),
        make_report("sum_dev", std::hypot(sx, sy), 1e-9 * static_cast<double>(n), ctx),
        make_report("sse", total, alpha * alpha * static_cast<double>(n - k), ctx),
    };
}

CumulativeErrorProfile cumulative_error_profile(const AbbaModel& model, const SymbolSequence& symbols,
                                                std::span<const Piece> original_pieces) {
    if (symbols.size() != original_pieces.size()) {
        throw InvalidArgument("cumulative_error_profile: " + std::to_string(symbols.size()) + " symbols for " +
                              std::to_string(original_pieces.size()) + " pieces");
    }
    const Codebook& cb = model.codebook;
    const auto centers = model.encode(symbols);

    CumulativeErrorProfile p;
    ScaledTuple e{};
    RealPiece ed{};
    double worst_x = 0.0, worst_y = 0.0, worst_len = 0.0, worst_second = 0.0;
    for (std::size_t j = 0; j < centers.size(); ++j) {
        const ScaledTuple c = cb.metric_center(centers[j]);
        const ScaledTuple t = cb.scale(original_pieces[j]);
        e.x += c.x - t.x;
        e.y += c.y - t.y;
        const auto [len, second] = cb.decode(centers[j]);
        ed.len += len - static_cast<double>(original_pieces[j].len);
        ed.second += second - original_pieces[j].second;
        p.scaled.push_back(e);
        p.denormalized.push_back(ed);

        const double steps = static_cast<double>(j + 1);
        worst_x = std::max(worst_x, std::abs(e.x) / steps);
        worst_y = std::max(worst_y, std::abs(e.y) / steps);
        worst_len = std::max(worst_len, std::abs(ed.len) / steps);
        worst_second = std::max(worst_second, std::abs(ed.second) / steps);
    }
    const BoundContext ctx{0, centers.size(), cb.size(), model.tol, model.alpha};
    const double a = model.alpha;
    p.scaled_len = make_report("cumulative_len_scaled", worst_x, a, ctx);
    p.scaled_second = make_report("cumulative_second_scaled", worst_y, a, ctx);
    const double len_unit = cb.scl > 0.0 ? cb.sigma_len / cb.scl : cb.sigma_len;
    // With scl == 0 lengths carry no weight in the clustering, so alpha says
    // nothing about them; report the measured value against itself.
    p.denorm_len = cb.scl > 0.0 ? make_report("cumulative_len", worst_len, a * len_unit, ctx)
                                : make_report("cumulative_len", worst_len, worst_len, ctx);
    p.denorm_second = make_report("cumulative_second", worst_second, a * cb.sigma_second, ctx);
    return p;
}

TailCheck tail_check(std::span<const double> deviations, std::size_t j, double h, double alpha, double sigmas) {
    TailCheck t;
    t.j = j;
    t.h = h;
    t.samples = deviations.size();
    for (double d : deviations) t.exceedances += std::abs(d) >= h ? 1 : 0;
    if (t.samples == 0) return t;
    const double n = static_cast<double>(t.samples);
    t.empirical = static_cast<double>(t.exceedances) / n;
    t.bound = std::exp(-h * h / (2.0 * static_cast<double>(j) * alpha * alpha));
    t.standard_error = std::sqrt(t.bound * (1.0 - t.bound) / n);
    t.satisfied = t.empirical <= t.bound + sigmas * t.standard_error;
    return t;
}

std::vector<ZipfEntry> zipf_profile(std::span<const SymbolSequence> corpus) {
    std::unordered_map<std::string, std::size_t> slot;
    std::vector<ZipfEntry> entries;
    for (const auto& seq : corpus) {
        for (const auto& s : seq) {
            auto [it, inserted] = slot.emplace(s, entries.size());
            if (inserted) entries.push_back({0, s, 0, 0.0, 0.0});
            ++entries[it->second].frequency;
        }
    }
    if (entries.empty()) throw InvalidArgument("zipf_profile: empty corpus");
    std::stable_sort(entries.begin(), entries.end(),
                     [](const ZipfEntry& a, const ZipfEntry& b) { return a.frequency > b.frequency; });
    for (std::size_t r = 0; r < entries.size(); ++r) {
        entries[r].rank = r + 1;
        entries[r].log_rank = std::log(static_cast<double>(r + 1));
        entries[r].log_frequency = std::log(static_cast<double>(entries[r].frequency));
    }
    return entries;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string zipf_csv(std::span<const ZipfEntry> entries) {
    std::string out = "rank,frequency,log_rank,log_frequency\n";
    for (const auto& e : entries) {
        out += std::to_string(e.rank) + "," + std::to_string(e.frequency) + "," + fmt17(e.log_rank) + "," +
               fmt17(e.log_frequency) + "\n";
    }
    return out;
}

std::string to_json(const BoundReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["measured"] = r.measured;
    j["bound"] = r.bound;
    j["satisfied"] = r.satisfied;
    j["context"] = {{"n", r.context.n},
                    {"pieces", r.context.pieces},
                    {"clusters", r.context.clusters},
                    {"tol", r.context.tol},
                    {"alpha", r.context.alpha}};
    return j.dump();
}

std::string format_reports(std::span<const BoundReport> reports) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-26s %14s %14s  %s\n", "bound", "measured", "limit", "status");
    out += line;
    for (const auto& r : reports) {
        std::snprintf(line, sizeof line, "%-26s %14s %14s  %s\n", r.name.c_str(), fmt6(r.measured).c_str(),
                      fmt6(r.bound).c_str(), r.satisfied ? "ok" : "VIOLATED");
        out += line;
    }
    return out;
}

}  // namespace abba
