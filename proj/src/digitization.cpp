#include "abba/digitization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace abba {

ScaledPieces scale_tuples(std::span<const Piece> pieces, double scl) {
    if (pieces.empty()) throw InvalidArgument("scale_tuples: no pieces");
    if (!(scl >= 0.0) || !std::isfinite(scl)) throw InvalidArgument("scl must be a non-negative finite number");

    std::vector<double> lens, seconds;
    lens.reserve(pieces.size());
    seconds.reserve(pieces.size());
    for (const Piece& p : pieces) {
        lens.push_back(static_cast<double>(p.len));
        seconds.push_back(p.second);
    }
    ScaledPieces out;
    out.sigma_len = population_stddev(lens);
    out.sigma_second = population_stddev(seconds);
    if (out.sigma_len == 0.0) out.sigma_len = 1.0;
    if (out.sigma_second == 0.0) out.sigma_second = 1.0;

    out.tuples.reserve(pieces.size());
    for (const Piece& p : pieces) {
        const double x = scl > 0.0 ? scl * static_cast<double>(p.len) / out.sigma_len : 0.0;
        out.tuples.push_back({x, p.second / out.sigma_second});
    }
    return out;
}

double sse(std::span<const ScaledTuple> tuples, const Clustering& c) {
    double total = 0.0;
    for (std::size_t i = 0; i < tuples.size(); ++i) total += squared_distance(tuples[i], c.centers[c.labels[i]]);
    return total;
}

namespace {

void compute_means(std::span<const ScaledTuple> tuples, Clustering& c) {
    const std::size_t k = c.centers.size();
    std::vector<double> sx(k, 0.0), sy(k, 0.0);
    c.cardinalities.assign(k, 0);
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        const std::size_t l = c.labels[i];
        sx[l] += tuples[i].x;
        sy[l] += tuples[i].y;
        ++c.cardinalities[l];
    }
    for (std::size_t l = 0; l < k; ++l) {
        if (c.cardinalities[l] == 0) continue;
        const double m = static_cast<double>(c.cardinalities[l]);
        c.centers[l] = {sx[l] / m, sy[l] / m};
    }
}

}  // namespace

Clustering aggregate_greedy(std::span<const ScaledTuple> tuples, double alpha, GreedyOptions opts) {
    if (tuples.empty()) throw InvalidArgument("aggregate_greedy: no tuples");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be a positive finite number");

    const std::size_t n = tuples.size();
    std::vector<double> norms(n);
    for (std::size_t i = 0; i < n; ++i) norms[i] = std::hypot(tuples[i].x, tuples[i].y);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return norms[a] < norms[b]; });

    constexpr std::size_t unassigned = std::numeric_limits<std::size_t>::max();
    const double alpha2 = alpha * alpha;
    // Slightly wider than alpha so rounding in the norms never cuts a scan short.
    const double gap_limit = alpha * (1.0 + 1e-12);

    Clustering c;
    c.labels.assign(n, unassigned);
    for (std::size_t a = 0; a < n; ++a) {
        const std::size_t i = order[a];
        if (c.labels[i] != unassigned) continue;
        const std::size_t group = c.centers.size();
        c.centers.push_back(tuples[i]);
        c.labels[i] = group;
        for (std::size_t b = a + 1; b < n; ++b) {
            const std::size_t j = order[b];
            if (opts.early_termination && norms[j] - norms[i] > gap_limit) break;
            if (c.labels[j] != unassigned) continue;
            if (squared_distance(tuples[i], tuples[j]) <= alpha2) c.labels[j] = group;
        }
    }
    compute_means(tuples, c);
    return c;
}

namespace {

// mt19937_64 is fully specified; std distributions are not, so draw
// doubles directly from its bits for cross-platform reproducibility.
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t sample_weighted(std::span<const double> weights, double total, std::mt19937_64& rng) {
    const double r = uniform01(rng) * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        acc += weights[i];
        last_positive = i;
        if (r < acc) return i;
    }
    return last_positive;
}

std::vector<ScaledTuple> seed_centers(std::span<const ScaledTuple> tuples, std::size_t k, std::mt19937_64& rng) {
    const std::size_t n = tuples.size();
    const std::size_t trials = 2 + static_cast<std::size_t>(std::log(static_cast<double>(k)));

    std::vector<ScaledTuple> centers;
    centers.reserve(k);
    centers.push_back(tuples[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)) % n]);

    std::vector<double> closest(n);
    for (std::size_t i = 0; i < n; ++i) closest[i] = squared_distance(tuples[i], centers[0]);

    std::vector<double> candidate_closest(n), best_closest(n);
    while (centers.size() < k) {
        const double potential = std::accumulate(closest.begin(), closest.end(), 0.0);
        std::size_t best = 0;
        double best_potential = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < trials; ++t) {
            const std::size_t cand = sample_weighted(closest, potential, rng);
            double pot = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                candidate_closest[i] = std::min(closest[i], squared_distance(tuples[i], tuples[cand]));
                pot += candidate_closest[i];
            }
            if (pot < best_potential) {
                best_potential = pot;
                best = cand;
                best_closest.swap(candidate_closest);
            }
        }
        centers.push_back(tuples[best]);
        closest.swap(best_closest);
        best_closest.resize(n);
    }
    return centers;
}

std::size_t count_distinct(std::span<const ScaledTuple> tuples) {
    std::vector<std::pair<double, double>> v;
    v.reserve(tuples.size());
    for (const auto& t : tuples) v.emplace_back(t.x, t.y);
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace

Clustering aggregate_lloyd(std::span<const ScaledTuple> tuples, std::size_t k, std::uint64_t seed, LloydOptions opts) {
    if (tuples.empty()) throw InvalidArgument("aggregate_lloyd: no tuples");
    if (k == 0) throw InvalidArgument("aggregate_lloyd: k must be positive");
    const std::size_t distinct = count_distinct(tuples);
    if (k > distinct) {
        throw InvalidArgument("aggregate_lloyd: k = " + std::to_string(k) + " exceeds the " +
                              std::to_string(distinct) + " distinct tuples");
    }

    const std::size_t n = tuples.size();
    std::mt19937_64 rng(seed);
    Clustering c;
    c.centers = seed_centers(tuples, k, rng);
    c.labels.assign(n, 0);
    std::vector<std::size_t> previous;

    for (c.iterations = 0; c.iterations < opts.max_iterations; ++c.iterations) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (std::size_t l = 0; l < k; ++l) {
                const double d = squared_distance(tuples[i], c.centers[l]);
                if (d < best_d) {
                    best_d = d;
                    best = l;
                }
            }
            c.labels[i] = best;
        }
        c.sse_history.push_back(sse(tuples, c));
        if (c.labels == previous) break;
        previous = c.labels;

        compute_means(tuples, c);
        // Empty clusters take over the point farthest from its own center.
        for (std::size_t l = 0; l < k; ++l) {
            if (c.cardinalities[l] != 0) continue;
            std::size_t far = 0;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (c.cardinalities[c.labels[i]] <= 1) continue;
                const double d = squared_distance(tuples[i], c.centers[c.labels[i]]);
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            --c.cardinalities[c.labels[far]];
            c.labels[far] = l;
            c.cardinalities[l] = 1;
            c.centers[l] = tuples[far];
        }
    }
    compute_means(tuples, c);
    return c;
}

void rank_clusters(Clustering& c) {
    const std::size_t k = c.centers.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return c.cardinalities[a] > c.cardinalities[b]; });
    std::vector<std::size_t> rank_of(k);
    for (std::size_t r = 0; r < k; ++r) rank_of[order[r]] = r;

    std::vector<ScaledTuple> centers(k);
    std::vector<std::size_t> cards(k);
    for (std::size_t r = 0; r < k; ++r) {
        centers[r] = c.centers[order[r]];
        cards[r] = c.cardinalities[order[r]];
    }
    c.centers = std::move(centers);
    c.cardinalities = std::move(cards);
    for (auto& l : c.labels) l = rank_of[l];
}

FitResult fit(const FitInput& input, const Alphabet& alphabet) {
    if (input.series.empty()) throw InvalidArgument("fit: no series");
    const Variant variant = input.series.front().variant;
    std::vector<Piece> all;
    for (const auto& s : input.series) {
        if (s.variant != variant) throw InvalidArgument("fit: series mix apca and fapca pieces");
        all.insert(all.end(), s.pieces.begin(), s.pieces.end());
    }
    if (all.empty()) throw InvalidArgument("fit: no pieces");

    ScaledPieces scaled = scale_tuples(all, input.scl);
    Clustering c = input.digitizer == Digitizer::greedy ? aggregate_greedy(scaled.tuples, input.alpha)
                                                        : aggregate_lloyd(scaled.tuples, input.k, input.seed);
    rank_clusters(c);
    const std::size_t k = c.centers.size();
    if (k > alphabet.size()) throw AlphabetExhausted(k, alphabet.size());

    if (input.scl == 0.0) {
        std::vector<double> sum(k, 0.0);
        for (std::size_t i = 0; i < all.size(); ++i) {
            sum[c.labels[i]] += static_cast<double>(all[i].len) / scaled.sigma_len;
        }
        for (std::size_t l = 0; l < k; ++l) c.centers[l].x = sum[l] / static_cast<double>(c.cardinalities[l]);
    }

    FitResult out;
    AbbaModel& m = out.model;
    m.variant = variant;
    m.tol = input.series.front().tol;
    m.alpha = input.digitizer == Digitizer::greedy ? input.alpha : 0.0;
    m.digitizer = input.digitizer;
    m.codebook.centers = c.centers;
    m.codebook.cardinalities = c.cardinalities;
    m.codebook.sigma_len = scaled.sigma_len;
    m.codebook.sigma_second = scaled.sigma_second;
    m.codebook.scl = input.scl;
    m.codebook.variant = variant;
    m.alphabet = alphabet.prefix(k);

    std::size_t offset = 0;
    for (const auto& s : input.series) {
        m.initial_values.push_back(s.t0);
        std::vector<std::size_t> labels(c.labels.begin() + static_cast<std::ptrdiff_t>(offset),
                                        c.labels.begin() + static_cast<std::ptrdiff_t>(offset + s.pieces.size()));
        out.symbols.push_back(m.symbols_for(labels));
        out.labels.push_back(std::move(labels));
        offset += s.pieces.size();
    }
    out.tuples = std::move(scaled.tuples);
    return out;
}

std::vector<std::size_t> assign_nearest(const AbbaModel& model, std::span<const Piece> pieces) {
    std::vector<std::size_t> out;
    out.reserve(pieces.size());
    for (const Piece& p : pieces) out.push_back(model.codebook.nearest(model.codebook.scale(p)));
    return out;
}

SymbolSequence transform(const AbbaModel& model, std::span<const double> series, double tol) {
    const CompressionResult res = compress(series, tol, model.variant);
    const auto labels = assign_nearest(model, res.pieces);
    return model.symbols_for(labels);
}

}  // namespace abba
