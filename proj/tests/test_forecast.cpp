#include <gtest/gtest.h>

#include "abba/compression.hpp"
#include "abba/digitization.hpp"
#include "abba/forecast.hpp"
#include "abba/inverse.hpp"
#include "oracle.hpp"

using namespace abba;

namespace {

SymbolSequence chars(const std::string& s) {
    SymbolSequence out;
    for (char c : s) out.emplace_back(1, c);
    return out;
}

struct Sine {
    FitResult fit;
    std::vector<double> series;
};

Sine sine_model(Variant v, double period, double tol = 0.01) {
    Sine s;
    s.series = oracle::sine(3000, period);
    FitInput in;
    in.series.push_back(compress(std::span<const double>(s.series.data(), 2000), tol, v));
    in.alpha = 0.05;
    s.fit = fit(in, alphabet_default(10000));
    return s;
}

}  // namespace

TEST(NGram, AlternatingOrderOne) {
    const std::vector<SymbolSequence> c{chars("ababab")};
    const auto m = ngram_fit(c, 1, 0.1);
    const auto* after_a = m.counts({0});
    ASSERT_TRUE(after_a);
    EXPECT_EQ(after_a->size(), 1u);
    EXPECT_EQ(after_a->at(1), 3u);
    const auto* after_b = m.counts({1});
    ASSERT_TRUE(after_b);
    EXPECT_EQ(after_b->size(), 1u);
    EXPECT_EQ(after_b->at(0), 2u);
    EXPECT_EQ(ngram_predict(m, chars("ab"), 3), chars("aba"));
}

TEST(NGram, RunOrderTwo) {
    const std::vector<SymbolSequence> c{chars("aaaa")};
    const auto m = ngram_fit(c, 2, 0.1);
    const auto* after = m.counts({0, 0});
    ASSERT_TRUE(after);
    EXPECT_EQ(after->size(), 1u);
    EXPECT_EQ(after->at(0), 2u);
}

TEST(NGram, CountsAreAdditive) {
    const Alphabet v = alphabet_default(3);
    const std::vector<SymbolSequence> one{chars("abcab")}, two{chars("cabba")}, both{chars("abcab"), chars("cabba")};
    const auto m1 = ngram_fit(one, 2, 0.1, v), m2 = ngram_fit(two, 2, 0.1, v), m = ngram_fit(both, 2, 0.1, v);
    for (const NGramModel::Context& ctx : std::vector<NGramModel::Context>{{}, {0}, {1}, {2}, {0, 1}, {1, 2}, {2, 0}, {1, 1}}) {
        for (std::size_t s = 0; s < 3; ++s) {
            auto get = [&](const NGramModel& mm) -> std::size_t {
                const auto* c = mm.counts(ctx);
                if (!c) return 0;
                auto it = c->find(s);
                return it == c->end() ? 0 : it->second;
            };
            EXPECT_EQ(get(m), get(m1) + get(m2));
        }
    }
}

TEST(NGram, BackoffToUnigram) {
    const Alphabet v = alphabet_default(4);
    const std::vector<SymbolSequence> c{chars("abbbcb")};
    const auto m = ngram_fit(c, 2, 0.1, v);
    // 'd' never occurs, so the context is unseen at every length but zero
    EXPECT_EQ(ngram_predict(m, chars("d"), 1), chars("b"));
    EXPECT_EQ(ngram_predict(m, {}, 2), chars("bb"));
}

TEST(NGram, GreedyTiesToLowerRank) {
    const Alphabet v = alphabet_default(3);
    const std::vector<SymbolSequence> c{chars("acab")};
    const auto m = ngram_fit(c, 1, 0.0, v);
    EXPECT_EQ(ngram_predict(m, chars("a"), 1), chars("b"));
}

TEST(NGram, SampleIsSeeded) {
    const std::vector<SymbolSequence> c{chars("abcabcaabbccacb")};
    const auto m = ngram_fit(c, 2, 0.5);
    const auto a = ngram_predict(m, chars("ab"), 50, PredictMode::sample, 9);
    EXPECT_EQ(a, ngram_predict(m, chars("ab"), 50, PredictMode::sample, 9));
    EXPECT_EQ(a.size(), 50u);
    EXPECT_NE(a, ngram_predict(m, chars("ab"), 50, PredictMode::sample, 10));
    for (const auto& s : a) EXPECT_TRUE(m.vocabulary().find(s));
}

TEST(NGram, Errors) {
    const std::vector<SymbolSequence> c{chars("ab")};
    EXPECT_THROW(ngram_fit(c, 0, 0.1), InvalidArgument);
    EXPECT_THROW(ngram_fit(c, 1, -1.0), InvalidArgument);
    EXPECT_THROW(ngram_fit(std::vector<SymbolSequence>{{}}, 1, 0.1), InvalidArgument);
    EXPECT_THROW(ngram_fit(c, 1, 0.1, alphabet_default(1)), DecodeError);
    const auto m = ngram_fit(c, 1, 0.1);
    EXPECT_THROW(ngram_predict(m, {}, 0), InvalidArgument);
    EXPECT_THROW(ngram_predict(NGramModel(1, 0.1, alphabet_default(2)), {}, 1), InvalidArgument);
}

TEST(NGram, PeriodicSymbolsPredictedExactly) {
    // period 5 fits an order-4 context: after one period every step is right
    const std::string unit = "abcbd";
    std::string train;
    for (int i = 0; i < 20; ++i) train += unit;
    const std::vector<SymbolSequence> c{chars(train)};
    const auto m = ngram_fit(c, 4, 0.1);
    const auto out = ngram_predict(m, chars(unit), 25);
    std::string expected;
    for (int i = 0; i < 5; ++i) expected += unit;
    EXPECT_EQ(out, chars(expected));
}

TEST(Forecast, ConstantHistory) {
    const std::vector<double> flat(200, 5.0);
    for (Variant v : {Variant::apca, Variant::fapca}) {
        FitInput in;
        in.series.push_back(compress(flat, 0.1, v));
        in.alpha = 0.1;
        const auto r = fit(in, alphabet_default(10));
        NGramPredictor p(ngram_fit(r.symbols, 3, 0.1, r.model.alphabet));
        for (Anchor a : {Anchor::last_breakpoint, Anchor::last_value}) {
            const auto f = forecast(r.model, p, flat, 17, 0.1, {a});
            ASSERT_EQ(f.values.size(), 17u);
            for (double x : f.values) EXPECT_NEAR(x, 5.0, 1e-12);
        }
    }
}

TEST(Forecast, HorizonIsExact) {
    const auto s = sine_model(Variant::fapca, 24);
    NGramPredictor p(ngram_fit(s.fit.symbols, 3, 0.1, s.fit.model.alphabet));
    const std::span<const double> hist(s.series.data() + 2000, 168);
    for (std::size_t h : {1u, 2u, 7u, 24u, 100u}) {
        for (Anchor a : {Anchor::last_breakpoint, Anchor::last_value}) {
            EXPECT_EQ(forecast(s.fit.model, p, hist, h, 0.01, {a}).values.size(), h);
        }
    }
    EXPECT_THROW(forecast(s.fit.model, p, hist, 0, 0.01), InvalidArgument);
}

TEST(Forecast, LastValueAnchorStartsFromLastSample) {
    const auto s = sine_model(Variant::fapca, 24);
    NGramPredictor p(ngram_fit(s.fit.symbols, 3, 0.1, s.fit.model.alphabet));
    const std::span<const double> hist(s.series.data() + 2000, 168);
    const auto f = forecast(s.fit.model, p, hist, 24, 0.01, {Anchor::last_value});
    EXPECT_EQ(f.anchor_index, hist.size() - 1);
    EXPECT_EQ(f.context_symbols, f.history_symbols);
    // first piece runs from the last sample to the predicted pinned value
    const auto rp = round_pieces(inverse_digitize(s.fit.model, {f.predicted_symbols.front()}), hist.back());
    const auto chain = chain_from_pieces(rp, Variant::fapca);
    EXPECT_EQ(f.values.front(), chain[1]);
}

TEST(Forecast, BreakpointAnchorDropsPartialPiece) {
    const auto s = sine_model(Variant::apca, 24);
    NGramPredictor p(ngram_fit(s.fit.symbols, 3, 0.1, s.fit.model.alphabet));
    const std::span<const double> hist(s.series.data() + 2000, 168);
    const auto f = forecast(s.fit.model, p, hist, 24, 0.01);
    EXPECT_EQ(f.context_symbols.size() + 1, f.history_symbols.size());
    const auto bps = compress_apca(hist, 0.01).breakpoints();
    EXPECT_EQ(f.anchor_index, static_cast<std::size_t>(bps[bps.size() - 2]));
}

TEST(Forecast, SineBeatsPersistence) {
    for (Variant v : {Variant::apca, Variant::fapca}) {
        const auto s = sine_model(v, 24);
        const std::span<const double> hist(s.series.data() + 2000, 168);
        const std::span<const double> truth(s.series.data() + 2168, 24);
        std::vector<SymbolSequence> corpus = s.fit.symbols;
        corpus.push_back(transform(s.fit.model, hist, 0.01));
        NGramPredictor p(ngram_fit(corpus, 3, 0.1, s.fit.model.alphabet));
        const auto f = forecast(s.fit.model, p, hist, 24, 0.01);
        const auto got = evaluate_forecast(truth, f.values);
        const auto base = evaluate_forecast(truth, persistence_forecast(hist, 24));
        EXPECT_LT(got.mse, base.mse);
    }
}

TEST(Forecast, DeterministicInGreedyMode) {
    const auto s = sine_model(Variant::fapca, 30);
    NGramPredictor p(ngram_fit(s.fit.symbols, 3, 0.1, s.fit.model.alphabet));
    const std::span<const double> hist(s.series.data() + 2100, 168);
    EXPECT_EQ(forecast(s.fit.model, p, hist, 24, 0.01).values, forecast(s.fit.model, p, hist, 24, 0.01).values);
}

namespace {

class Hallucinating final : public SymbolPredictor {
public:
    SymbolSequence predict(const SymbolSequence&, std::size_t steps) const override {
        return SymbolSequence(steps, "not-a-symbol");
    }
};

class Silent final : public SymbolPredictor {
public:
    SymbolSequence predict(const SymbolSequence&, std::size_t) const override { return {}; }
};

}  // namespace

TEST(Forecast, UnknownPredictedSymbolIsDecodeError) {
    const auto s = sine_model(Variant::apca, 24);
    const std::span<const double> hist(s.series.data() + 2000, 168);
    EXPECT_THROW(forecast(s.fit.model, Hallucinating{}, hist, 5, 0.01), DecodeError);
    EXPECT_THROW(forecast(s.fit.model, Silent{}, hist, 5, 0.01), InvalidArgument);
}

TEST(Evaluate, Definitions) {
    const auto z = evaluate_forecast(std::vector<double>{1, 2}, std::vector<double>{1, 2});
    EXPECT_EQ(z.mse, 0.0);
    EXPECT_EQ(z.mae, 0.0);
    const auto o = evaluate_forecast(std::vector<double>{0, 0}, std::vector<double>{1, 1});
    EXPECT_EQ(o.mse, 1.0);
    EXPECT_EQ(o.mae, 1.0);
    EXPECT_THROW(evaluate_forecast(std::vector<double>{0}, std::vector<double>{1, 1}), InvalidArgument);
    EXPECT_EQ(persistence_forecast(std::vector<double>{1, 4}, 3), (TimeSeries{4, 4, 4}));
}
