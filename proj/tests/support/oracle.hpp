#pragma once

// Brute-force reference implementations and series generators shared by the
// unit and acceptance tests. Deliberately naive: no running sums, no sorted
// early exits.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "abba/core.hpp"

namespace oracle {

inline long double residual(const std::vector<double>& t, std::size_t a, std::size_t b) {
    long double s = 0;
    for (std::size_t i = a; i <= b; ++i) {
        const long double chord = t[a] + (static_cast<long double>(t[b]) - t[a]) * (i - a) / (b - a);
        s += (chord - t[i]) * (chord - t[i]);
    }
    return s;
}

inline bool admissible(const std::vector<double>& t, std::size_t a, std::size_t b, double tol) {
    return residual(t, a, b) <= static_cast<long double>(b - a - 1) * tol * tol;
}

/// Breakpoint indices of the greedy partition, by direct evaluation.
inline std::vector<std::size_t> partition(const std::vector<double>& t, double tol) {
    std::vector<std::size_t> bps{0};
    std::size_t a = 0;
    while (a + 1 < t.size()) {
        std::size_t b = a + 1;
        while (b + 1 < t.size() && admissible(t, a, b + 1, tol)) ++b;
        bps.push_back(b);
        a = b;
    }
    return bps;
}

struct Groups {
    std::vector<std::vector<std::size_t>> members;  // creation order
    std::vector<std::size_t> starts;
};

/// Greedy aggregation without the norm-gap exit: stable sort by norm, scan everything.
inline Groups greedy_groups(const std::vector<abba::ScaledTuple>& p, double alpha) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::hypot(p[a].x, p[a].y) < std::hypot(p[b].x, p[b].y);
    });
    std::vector<bool> used(p.size(), false);
    Groups g;
    for (std::size_t oi = 0; oi < order.size(); ++oi) {
        const std::size_t s = order[oi];
        if (used[s]) continue;
        used[s] = true;
        g.starts.push_back(s);
        g.members.push_back({s});
        for (std::size_t oj = oi + 1; oj < order.size(); ++oj) {
            const std::size_t j = order[oj];
            if (!used[j] && std::hypot(p[j].x - p[s].x, p[j].y - p[s].y) <= alpha) {
                used[j] = true;
                g.members.back().push_back(j);
            }
        }
    }
    return g;
}

inline std::vector<int64_t> carry_round(const std::vector<double>& l) {
    std::vector<int64_t> h;
    double e = 0;
    for (double x : l) {
        double v = std::nearbyint(x + e);
        if (v < 1) v = 1;
        e = (x + e) - v;
        h.push_back(static_cast<int64_t>(v));
    }
    return h;
}

// ---------------------------------------------------------------------------
// Series generators

enum class Kind { random_walk, noisy_sine, steps };

inline std::vector<double> make_series(Kind kind, std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> noise(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> t(n);
    switch (kind) {
        case Kind::random_walk: {
            double v = 0;
            for (auto& x : t) x = v += noise(rng);
            break;
        }
        case Kind::noisy_sine: {
            const double period = 10 + 190 * u(rng);
            const double amp = 0.5 + 5 * u(rng);
            const double sd = 0.3 * u(rng);
            for (std::size_t i = 0; i < n; ++i) t[i] = amp * std::sin(2 * M_PI * i / period) + sd * noise(rng);
            break;
        }
        case Kind::steps: {
            double level = noise(rng);
            for (std::size_t i = 0; i < n; ++i) {
                if (u(rng) < 0.02) level = 4 * noise(rng);
                t[i] = level + 0.05 * noise(rng);
            }
            break;
        }
    }
    return t;
}

/// `count` series cycling through the three kinds, n in [50, 2000].
inline std::vector<std::vector<double>> corpus(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(50, 2000);
    std::vector<std::vector<double>> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(make_series(static_cast<Kind>(i % 3), len(rng), rng));
    return out;
}

inline std::vector<double> sine(std::size_t n, double period, double amp = 1.0, double phase = 0.0) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = amp * std::sin(2 * M_PI * (i + phase) / period);
    return t;
}

}  // namespace oracle
