#include <cmath>
#include <random>

#include "abba/forecast.hpp"

namespace abba {

NGramModel::NGramModel(std::size_t order, double delta, Alphabet vocabulary)
    : order_(order), delta_(delta), vocabulary_(std::move(vocabulary)), tables_(order + 1) {
    if (order == 0) throw InvalidArgument("n-gram order must be at least 1");
    if (!(delta >= 0.0) || !std::isfinite(delta)) throw InvalidArgument("n-gram delta must be non-negative");
}

void NGramModel::add(const SymbolSequence& sequence) {
    Context ranks;
    ranks.reserve(sequence.size());
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        auto r = vocabulary_.find(sequence[i]);
        if (!r) throw DecodeError(sequence[i], i);
        ranks.push_back(*r);
    }
    for (std::size_t i = 0; i < ranks.size(); ++i) {
        for (std::size_t c = 0; c <= order_ && c <= i; ++c) {
            Context ctx(ranks.begin() + static_cast<std::ptrdiff_t>(i - c), ranks.begin() + static_cast<std::ptrdiff_t>(i));
            ++tables_[c][ctx][ranks[i]];
        }
    }
}

const NGramModel::Counts* NGramModel::counts(const Context& context) const {
    if (context.size() >= tables_.size()) return nullptr;
    const auto& table = tables_[context.size()];
    auto it = table.find(context);
    return it == table.end() ? nullptr : &it->second;
}

NGramModel ngram_fit(std::span<const SymbolSequence> sequences, std::size_t order, double delta,
                     const Alphabet& vocabulary) {
    NGramModel m(order, delta, vocabulary);
    for (const auto& s : sequences) m.add(s);
    return m;
}

NGramModel ngram_fit(std::span<const SymbolSequence> sequences, std::size_t order, double delta) {
    std::vector<std::string> seen;
    std::unordered_map<std::string, bool> known;
    for (const auto& s : sequences) {
        for (const auto& sym : s) {
            if (known.emplace(sym, true).second) seen.push_back(sym);
        }
    }
    if (seen.empty()) throw InvalidArgument("ngram_fit: empty corpus");
    return ngram_fit(sequences, order, delta, Alphabet(std::move(seen), AlphabetSource::external_token_file));
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

SymbolSequence ngram_predict(const NGramModel& model, const SymbolSequence& prefix, std::size_t steps,
                             PredictMode mode, std::uint64_t seed) {
    if (model.empty()) throw InvalidArgument("ngram_predict: model has no counts");
    if (steps == 0) throw InvalidArgument("ngram_predict: steps must be at least 1");

    const Alphabet& vocab = model.vocabulary();
    // Prefix symbols outside the vocabulary simply break context matches.
    constexpr std::size_t unknown = static_cast<std::size_t>(-1);
    NGramModel::Context history;
    history.reserve(prefix.size() + steps);
    for (const auto& s : prefix) history.push_back(vocab.find(s).value_or(unknown));

    std::mt19937_64 rng(seed);
    SymbolSequence out;
    out.reserve(steps);
    for (std::size_t step = 0; step < steps; ++step) {
        const NGramModel::Counts* counts = nullptr;
        for (std::size_t c = std::min(model.order(), history.size());; --c) {
            NGramModel::Context ctx(history.end() - static_cast<std::ptrdiff_t>(c), history.end());
            counts = model.counts(ctx);
            if (counts || c == 0) break;
        }
        std::size_t next = 0;
        if (mode == PredictMode::greedy) {
            std::size_t best = 0;
            for (const auto& [sym, n] : *counts) {
                // std::map iterates in rank order, so strict > keeps the lower rank.
                if (n > best) {
                    best = n;
                    next = sym;
                }
            }
        } else {
            const double v = static_cast<double>(vocab.size());
            double total = model.delta() * v;
            for (const auto& kv : *counts) total += static_cast<double>(kv.second);
            const double r = uniform01(rng) * total;
            double acc = 0.0;
            next = counts->rbegin()->first;
            for (std::size_t sym = 0; sym < vocab.size(); ++sym) {
                auto it = counts->find(sym);
                const double w = (it == counts->end() ? 0.0 : static_cast<double>(it->second)) + model.delta();
                if (w <= 0.0) continue;
                acc += w;
                if (r < acc) {
                    next = sym;
                    break;
                }
            }
        }
        history.push_back(next);
        out.push_back(vocab[next]);
    }
    return out;
}

NGramPredictor::NGramPredictor(NGramModel model, PredictMode mode, std::uint64_t seed)
    : model_(std::move(model)), mode_(mode), seed_(seed) {}

SymbolSequence NGramPredictor::predict(const SymbolSequence& prefix, std::size_t steps) const {
    // Mixing the prefix length into the seed keeps one-step-at-a-time calls
    // from replaying the same draw.
    return ngram_predict(model_, prefix, steps, mode_, seed_ + 0x9e3779b97f4a7c15ULL * prefix.size());
}

}  // namespace abba
