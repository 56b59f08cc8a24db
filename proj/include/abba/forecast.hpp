#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "abba/core.hpp"

namespace abba {

/// Backoff n-gram over symbol ranks. Counts are kept for every context
/// length 0..order; length 0 is the unigram table.
class NGramModel {
public:
    using Context = std::vector<std::size_t>;
    using Counts = std::map<std::size_t, std::size_t>;

    NGramModel() = default;
    NGramModel(std::size_t order, double delta, Alphabet vocabulary);

    std::size_t order() const noexcept { return order_; }
    double delta() const noexcept { return delta_; }
    const Alphabet& vocabulary() const noexcept { return vocabulary_; }
    bool empty() const noexcept { return tables_.empty() || tables_.front().empty(); }

    void add(const SymbolSequence& sequence);

    /// Counts following `context`, or nullptr if that context never occurred.
    const Counts* counts(const Context& context) const;

private:
    std::size_t order_ = 0;
    double delta_ = 0.0;
    Alphabet vocabulary_;
    /// tables_[c] maps contexts of length c to next-symbol counts.
    std::vector<std::map<Context, Counts>> tables_;
};

/// Vocabulary is the given alphabet; sequences using other symbols throw
/// DecodeError.
NGramModel ngram_fit(std::span<const SymbolSequence> sequences, std::size_t order, double delta,
                     const Alphabet& vocabulary);

/// Vocabulary ordered by first occurrence in the corpus.
NGramModel ngram_fit(std::span<const SymbolSequence> sequences, std::size_t order = 3, double delta = 0.1);

enum class PredictMode { greedy, sample };

/// Greedy: argmax count at the longest seen context, ties to the lower
/// vocabulary rank. Sample: draw from the delta-smoothed distribution at
/// that context. Output length is exactly `steps`.
SymbolSequence ngram_predict(const NGramModel& model, const SymbolSequence& prefix, std::size_t steps,
                             PredictMode mode = PredictMode::greedy, std::uint64_t seed = 0);

/// Anything that continues a symbol string.
class SymbolPredictor {
public:
    virtual ~SymbolPredictor() = default;
    virtual SymbolSequence predict(const SymbolSequence& prefix, std::size_t steps) const = 0;
};

class NGramPredictor final : public SymbolPredictor {
public:
    explicit NGramPredictor(NGramModel model, PredictMode mode = PredictMode::greedy, std::uint64_t seed = 0);
    SymbolSequence predict(const SymbolSequence& prefix, std::size_t steps) const override;
    const NGramModel& model() const noexcept { return model_; }

private:
    NGramModel model_;
    PredictMode mode_;
    std::uint64_t seed_;
};

/// Where the predicted chain is spliced onto the history.
enum class Anchor {
    /// Drop the history's final piece, which the series end usually cuts
    /// short, and predict from the breakpoint before it. Forecast values are
    /// the part of the predicted chain after the last observed sample.
    last_breakpoint,
    /// Start the predicted chain at the last observed sample.
    last_value,
};

struct ForecastOptions {
    Anchor anchor = Anchor::last_breakpoint;
};

struct ForecastResult {
    TimeSeries values;
    /// Full symbolization of the history.
    SymbolSequence history_symbols;
    /// Prefix handed to the predictor (history_symbols minus the dropped
    /// final piece for Anchor::last_breakpoint).
    SymbolSequence context_symbols;
    SymbolSequence predicted_symbols;
    /// History index the predicted chain starts from.
    std::size_t anchor_index = 0;
};

/// Symbolizes `history` with `model`, asks `predictor` for one symbol at a
/// time and inverse-symbolizes the predicted suffix from the anchor until it
/// covers `horizon` samples past the history. Predicted symbols unknown to
/// the model raise DecodeError.
ForecastResult forecast(const AbbaModel& model, const SymbolPredictor& predictor, std::span<const double> history,
                        std::size_t horizon, double tol, ForecastOptions opts = {});

/// Repeats the last observed value.
TimeSeries persistence_forecast(std::span<const double> history, std::size_t horizon);

struct ForecastScore {
    double mse = 0.0;
    double mae = 0.0;
};

/// Throws InvalidArgument on length mismatch or empty input.
ForecastScore evaluate_forecast(std::span<const double> truth, std::span<const double> forecast);

}  // namespace abba
