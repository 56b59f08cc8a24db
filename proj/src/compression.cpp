#include "abba/compression.hpp"

#include <cmath>
#include <numeric>

namespace abba {

std::vector<std::int64_t> CompressionResult::breakpoints() const {
    std::vector<std::int64_t> out{0};
    out.reserve(pieces.size() + 1);
    for (const Piece& p : pieces) out.push_back(out.back() + p.len);
    return out;
}

double chord_residual(std::span<const double> series, std::size_t start, std::size_t end) {
    const double ts = series[start];
    const double inc = series[end] - ts;
    const double len = static_cast<double>(end - start);
    double err = 0.0;
    for (std::size_t i = start; i <= end; ++i) {
        const double r = ts + inc * (static_cast<double>(i - start) / len) - series[i];
        err += r * r;
    }
    return err;
}

namespace {

void validate(std::span<const double> series, double tol) {
    if (series.size() < 2) throw InvalidArgument("compression needs at least 2 samples");
    if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidArgument("tol must be a positive finite number");
    require_finite(series);
}

// Running sums relative to the piece start: with y_i = t_i - t_s, u = i - s,
// L = e - s and delta = y_e,
//   residual = delta^2/L^2 * sum u^2 - 2 delta/L * sum u*y + sum y^2.
// Close to the threshold the sum cancels badly, so decisions within a small
// relative band are re-evaluated directly.
std::vector<std::size_t> partition(std::span<const double> series, double tol) {
    const std::size_t n = series.size();
    const double tol2 = tol * tol;
    std::vector<std::size_t> ends;

    std::size_t start = 0;
    while (start < n - 1) {
        const double ts = series[start];
        double sum_uy = 0.0;
        double sum_yy = 0.0;
        std::size_t end = start + 1;
        // len == 1 always passes: empty interior.
        {
            const double y = series[end] - ts;
            sum_uy += y;
            sum_yy += y * y;
        }
        while (end + 1 < n) {
            const std::size_t cand = end + 1;
            const double y = series[cand] - ts;
            const double u = static_cast<double>(cand - start);
            const double su = sum_uy + u * y;
            const double syy = sum_yy + y * y;
            const double sum_u2 = u * (u + 1.0) * (2.0 * u + 1.0) / 6.0;
            const double residual = y * y / (u * u) * sum_u2 - 2.0 * y / u * su + syy;
            const double bound = (u - 1.0) * tol2;
            bool ok = residual <= bound;
            if (std::abs(residual - bound) <= 1e-9 * (syy + bound)) {
                ok = chord_residual(series, start, cand) <= bound;
            }
            if (!ok) break;
            end = cand;
            sum_uy = su;
            sum_yy = syy;
        }
        ends.push_back(end);
        start = end;
    }
    return ends;
}

}  // namespace

CompressionResult compress(std::span<const double> series, double tol, Variant variant) {
    validate(series, tol);
    CompressionResult res;
    res.variant = variant;
    res.t0 = series.front();
    res.n = series.size();
    res.tol = tol;
    res.knots.push_back(series.front());

    std::size_t prev = 0;
    for (std::size_t end : partition(series, tol)) {
        const double second = variant == Variant::apca ? series[end] - series[prev] : series[end];
        res.pieces.push_back({static_cast<std::int64_t>(end - prev), second});
        res.knots.push_back(series[end]);
        prev = end;
    }
    return res;
}

CompressionResult compress_apca(std::span<const double> series, double tol) {
    return compress(series, tol, Variant::apca);
}

CompressionResult compress_fapca(std::span<const double> series, double tol) {
    return compress(series, tol, Variant::fapca);
}

void append_segment(TimeSeries& out, double from, double to, std::int64_t len) {
    const double inc = to - from;
    const double l = static_cast<double>(len);
    for (std::int64_t u = 1; u < len; ++u) out.push_back(from + inc * (static_cast<double>(u) / l));
    out.push_back(to);
}

TimeSeries reconstruct_chain(const CompressionResult& result) {
    TimeSeries out;
    out.reserve(result.n);
    out.push_back(result.knots.front());
    for (std::size_t j = 0; j < result.pieces.size(); ++j) {
        append_segment(out, result.knots[j], result.knots[j + 1], result.pieces[j].len);
    }
    return out;
}

TimeSeries znormalize(std::span<const double> series) {
    require_finite(series);
    TimeSeries out(series.begin(), series.end());
    if (out.empty()) return out;
    const double mean = std::accumulate(out.begin(), out.end(), 0.0) / static_cast<double>(out.size());
    const double sd = population_stddev(series);
    for (double& v : out) v = sd > 0.0 ? (v - mean) / sd : 0.0;
    return out;
}

}  // namespace abba
