#include "abba/forecast.hpp"

#include <cmath>

#include "abba/compression.hpp"
#include "abba/digitization.hpp"
#include "abba/inverse.hpp"

namespace abba {

ForecastResult forecast(const AbbaModel& model, const SymbolPredictor& predictor, std::span<const double> history,
                        std::size_t horizon, double tol, ForecastOptions opts) {
    if (horizon == 0) throw InvalidArgument("forecast horizon must be at least 1");
    const CompressionResult compressed = compress(history, tol, model.variant);
    const auto labels = assign_nearest(model, compressed.pieces);

    ForecastResult r;
    r.history_symbols = model.symbols_for(labels);
    std::size_t kept = r.history_symbols.size();
    if (opts.anchor == Anchor::last_breakpoint && kept >= 2) --kept;
    r.context_symbols.assign(r.history_symbols.begin(), r.history_symbols.begin() + static_cast<std::ptrdiff_t>(kept));
    r.anchor_index = kept == r.history_symbols.size() ? history.size() - 1
                                                      : static_cast<std::size_t>(compressed.breakpoints()[kept]);
    const double anchor = history[r.anchor_index];
    const std::size_t skip = history.size() - 1 - r.anchor_index;

    SymbolSequence context = r.context_symbols;
    TimeSeries suffix{anchor};
    // Every piece covers at least one step, so the loop ends after at most
    // skip + horizon predictions.
    while (suffix.size() - 1 < skip + horizon) {
        const SymbolSequence next = predictor.predict(context, 1);
        if (next.size() != 1) throw InvalidArgument("predictor returned " + std::to_string(next.size()) + " symbols");
        if (!model.alphabet.find(next.front())) throw DecodeError(next.front(), r.predicted_symbols.size());
        context.push_back(next.front());
        r.predicted_symbols.push_back(next.front());
        suffix = inverse_symbolize(model, r.predicted_symbols, anchor);
    }
    const auto first = suffix.begin() + 1 + static_cast<std::ptrdiff_t>(skip);
    r.values.assign(first, first + static_cast<std::ptrdiff_t>(horizon));
    return r;
}

TimeSeries persistence_forecast(std::span<const double> history, std::size_t horizon) {
    if (history.empty()) throw InvalidArgument("persistence_forecast: empty history");
    return TimeSeries(horizon, history.back());
}

ForecastScore evaluate_forecast(std::span<const double> truth, std::span<const double> forecast) {
    if (truth.size() != forecast.size()) {
        throw InvalidArgument("evaluate_forecast: truth has " + std::to_string(truth.size()) + " values, forecast " +
                              std::to_string(forecast.size()));
    }
    if (truth.empty()) throw InvalidArgument("evaluate_forecast: empty input");
    ForecastScore s;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = truth[i] - forecast[i];
        s.mse += d * d;
        s.mae += std::abs(d);
    }
    s.mse /= static_cast<double>(truth.size());
    s.mae /= static_cast<double>(truth.size());
    return s;
}

}  // namespace abba
