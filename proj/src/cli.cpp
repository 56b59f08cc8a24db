#include "abba/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "abba/analysis.hpp"
#include "abba/compression.hpp"
#include "abba/digitization.hpp"
#include "abba/forecast.hpp"
#include "abba/inverse.hpp"
#include "abba/io.hpp"

namespace abba::cli {
namespace {

std::string g6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct FitFlags {
    std::string input;
    double tol = 0.1;
    double alpha = 0.1;
    double scl = 1.0;
    std::string variant = "apca";
    std::string digitizer = "greedy";
    std::size_t k = 0;
    std::uint64_t seed = 0;
    std::string alphabet = "builtin";
    bool znorm = false;
    bool independent = false;
};

void add_fit_flags(CLI::App* cmd, FitFlags& f) {
    cmd->add_option("--input", f.input, "CSV file, one series per column")->required();
    cmd->add_option("--tol", f.tol, "compression tolerance")->capture_default_str();
    cmd->add_option("--alpha", f.alpha, "greedy aggregation radius")->capture_default_str();
    cmd->add_option("--scl", f.scl, "length weight in the scaled space")->capture_default_str();
    cmd->add_option("--variant", f.variant, "apca or fapca")
        ->check(CLI::IsMember({"apca", "fapca"}))
        ->capture_default_str();
    cmd->add_option("--digitizer", f.digitizer, "greedy or lloyd")
        ->check(CLI::IsMember({"greedy", "lloyd"}))
        ->capture_default_str();
    cmd->add_option("--k", f.k, "cluster count for lloyd");
    cmd->add_option("--seed", f.seed, "seed for lloyd")->capture_default_str();
    cmd->add_option("--alphabet", f.alphabet, "builtin, ascii, or a token file (one per line)")
        ->capture_default_str();
    cmd->add_flag("--znorm", f.znorm, "z-normalize each column before compressing");
    cmd->add_flag("--independent", f.independent, "fit one model per column");
}

Alphabet load_alphabet(const std::string& spec, std::size_t at_least) {
    if (spec == "builtin") return alphabet_default(std::max<std::size_t>(at_least, 1));
    if (spec == "ascii") return alphabet_ascii(std::max<std::size_t>(at_least, 1));
    const auto lines = io::split_lines(io::read_file(spec));
    try {
        return alphabet_from_tokens(lines);
    } catch (const InvalidArgument& e) {
        throw ParseError(spec, 0, 0, e.what());
    }
}

std::vector<TimeSeries> load_columns(const std::string& path, bool znorm) {
    auto table = io::read_series_csv(path);
    if (znorm) {
        for (auto& c : table.columns) c = znormalize(c);
    }
    return std::move(table.columns);
}

struct Fitted {
    std::vector<CompressionResult> compressed;
    std::vector<FitResult> fits;  // one, or one per column with --independent
    /// fits index and position within it, per column
    std::vector<std::pair<std::size_t, std::size_t>> where;
};

Fitted run_fit(const FitFlags& f, const std::vector<TimeSeries>& columns) {
    const Variant variant = parse_variant(f.variant);
    const Digitizer digitizer = parse_digitizer(f.digitizer);
    if (digitizer == Digitizer::lloyd && f.k == 0) throw InvalidArgument("--digitizer lloyd requires --k");

    Fitted out;
    for (const auto& c : columns) out.compressed.push_back(compress(c, f.tol, variant));

    std::size_t total = 0;
    for (const auto& c : out.compressed) total += c.pieces.size();
    // The builtin alphabets grow on demand; an external token file does not.
    const Alphabet alphabet = load_alphabet(f.alphabet, total);

    auto fit_group = [&](std::vector<CompressionResult> group) {
        FitInput in;
        in.series = std::move(group);
        in.scl = f.scl;
        in.digitizer = digitizer;
        in.alpha = f.alpha;
        in.k = f.k;
        in.seed = f.seed;
        return fit(in, alphabet);
    };
    if (f.independent) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            out.fits.push_back(fit_group({out.compressed[i]}));
            out.where.emplace_back(i, 0);
        }
    } else {
        out.fits.push_back(fit_group(out.compressed));
        for (std::size_t i = 0; i < columns.size(); ++i) out.where.emplace_back(0, i);
    }
    return out;
}

std::string model_path(const std::string& base, std::size_t index, bool independent) {
    if (!independent) return base;
    std::filesystem::path p(base);
    const std::string stem = p.stem().string();
    const std::string ext = p.has_extension() ? p.extension().string() : ".json";
    return (p.parent_path() / (stem + "." + std::to_string(index) + ext)).string();
}

AbbaModel load_model(const std::string& path) {
    return model_from_json(io::read_file(path), path);
}

// Symbol files written for single-byte alphabets carry no separators.
std::vector<SymbolSequence> load_symbols(const std::string& path, const AbbaModel* model) {
    const std::string text = io::read_file(path);
    if (model) return io::parse_symbols(text, model->alphabet, path);
    const bool spaced = text.find(' ') != std::string::npos;
    const Alphabet probe = spaced ? Alphabet({"ab"}, AlphabetSource::external_token_file)
                                  : Alphabet({"a"}, AlphabetSource::builtin);
    return io::parse_symbols(text, probe, path);
}

// ---------------------------------------------------------------------------

int cmd_fit(const FitFlags& f, const std::string& model_out, const std::string& symbols_out, std::ostream& out) {
    const auto columns = load_columns(f.input, f.znorm);
    const Fitted fitted = run_fit(f, columns);

    std::vector<SymbolSequence> lines;
    for (const auto& [fi, pos] : fitted.where) lines.push_back(fitted.fits[fi].symbols[pos]);
    for (std::size_t i = 0; i < fitted.fits.size(); ++i) {
        io::write_file(model_path(model_out, i, f.independent), to_json(fitted.fits[i].model));
    }
    io::write_file(symbols_out, io::format_symbols(lines, fitted.fits.front().model.alphabet));
    for (std::size_t i = 0; i < fitted.fits.size(); ++i) {
        out << "model " << model_path(model_out, i, f.independent) << ": " << fitted.fits[i].model.codebook.size()
            << " symbols\n";
    }
    return ok;
}

int cmd_transform(const std::string& model_in, const std::string& input, std::optional<double> tol, bool znorm,
                  const std::string& symbols_out) {
    const AbbaModel model = load_model(model_in);
    const auto columns = load_columns(input, znorm);
    std::vector<SymbolSequence> lines;
    for (const auto& c : columns) lines.push_back(transform(model, c, tol.value_or(model.tol)));
    io::write_file(symbols_out, io::format_symbols(lines, model.alphabet));
    return ok;
}

int cmd_inverse(const std::string& model_in, const std::string& symbols_in, std::optional<double> t0,
                const std::string& output, std::ostream& err) {
    const AbbaModel model = load_model(model_in);
    const auto lines = load_symbols(symbols_in, &model);
    std::vector<TimeSeries> columns;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        double start = 0.0;
        if (t0) {
            start = *t0;
        } else if (i < model.initial_values.size()) {
            start = model.initial_values[i];
        } else {
            throw InvalidArgument("no --t0 given and the model records no initial value for line " +
                                  std::to_string(i + 1));
        }
        try {
            columns.push_back(inverse_symbolize(model, lines[i], start));
        } catch (const DecodeError& e) {
            err << "error: line " << i + 1 << ": " << e.what() << '\n';
            return decode_error;
        }
    }
    io::write_file(output, io::format_series_csv(columns));
    return ok;
}

int cmd_roundtrip(const FitFlags& f, std::ostream& out) {
    const auto columns = load_columns(f.input, f.znorm);
    const Fitted fitted = run_fit(f, columns);

    std::vector<BoundReport> reports;
    for (const auto& fr : fitted.fits) {
        std::vector<std::size_t> labels;
        for (const auto& l : fr.labels) labels.insert(labels.end(), l.begin(), l.end());
        auto d = check_digitization_bounds(fr.tuples, fr.model.codebook, labels, fr.model.alpha);
        if (fr.model.digitizer == Digitizer::greedy) {
            reports.insert(reports.end(), d.begin(), d.end());
        } else {
            reports.push_back(d[1]);  // alpha bounds do not apply to lloyd
        }
    }

    char line[256];
    std::snprintf(line, sizeof line, "%-8s %8s %8s %8s %14s %14s %12s %6s\n", "series", "symbols", "alphabet",
                  "pieces", "mse", "mae", "correlation", "gap");
    out << line;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const auto& [fi, pos] = fitted.where[i];
        const FitResult& fr = fitted.fits[fi];
        const SymbolSequence& syms = fr.symbols[pos];
        const TimeSeries recon = inverse_symbolize(fr.model, syms, columns[i].front());
        const Metrics m = metrics(columns[i], recon);
        const std::set<std::string> used(syms.begin(), syms.end());
        std::snprintf(line, sizeof line, "%-8zu %8zu %8zu %8zu %14s %14s %12s %6td\n", i, used.size(),
                      fr.model.codebook.size(), syms.size(), g6(m.mse).c_str(), g6(m.mae).c_str(),
                      m.pearson ? g6(*m.pearson).c_str() : "undefined", m.length_gap);
        out << line;

        reports.push_back(check_compression_bound(columns[i], fitted.compressed[i]));
        reports.back().name = "compression[" + std::to_string(i) + "]";
        if (fr.model.digitizer == Digitizer::greedy) {
            auto prof = cumulative_error_profile(fr.model, syms, fitted.compressed[i].pieces);
            prof.scaled_len.name += "[" + std::to_string(i) + "]";
            prof.scaled_second.name += "[" + std::to_string(i) + "]";
            reports.push_back(prof.scaled_len);
            reports.push_back(prof.scaled_second);
        }
    }
    out << '\n' << format_reports(reports);
    for (const auto& r : reports) {
        if (!r.satisfied) return bound_violation;
    }
    return ok;
}

int cmd_perturb(const std::string& model_in, const std::string& symbols_in, std::size_t line, std::size_t position,
                const std::string& replacement, std::optional<double> t0, std::ostream& out) {
    const AbbaModel model = load_model(model_in);
    const auto lines = load_symbols(symbols_in, &model);
    if (line >= lines.size()) throw InvalidArgument("--line " + std::to_string(line) + " outside symbols file");
    double start = 0.0;
    if (t0) {
        start = *t0;
    } else if (line < model.initial_values.size()) {
        start = model.initial_values[line];
    }
    const PerturbationReport r = perturb_and_compare(model, lines[line], position, replacement, start);
    out << "variant " << to_string(r.variant) << ", position " << r.position << ": '" << r.original << "' -> '"
        << r.replacement << "', delta " << g17(r.delta) << "\n";
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-10s %20s %20s %12s\n", "breakpoint", "apca_style_drift", "fapca_style_drift",
                  "index_shift");
    out << buf;
    for (std::size_t j = 0; j < r.apca_style.value_drift.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%-10zu %20s %20s %12lld\n", r.position + 2 + j,
                      g17(r.apca_style.value_drift[j]).c_str(), g17(r.fapca_style.value_drift[j]).c_str(),
                      static_cast<long long>(r.apca_style.index_shift[j]));
        out << buf;
    }
    out << "max series deviation: apca_style " << g17(r.apca_style.max_series_deviation) << ", fapca_style "
        << g17(r.fapca_style.max_series_deviation) << "\n";
    return ok;
}

int cmd_zipf(const std::vector<std::string>& inputs, const std::string& model_in, const std::string& csv_out,
             std::ostream& out) {
    std::optional<AbbaModel> model;
    if (!model_in.empty()) model = load_model(model_in);
    std::vector<SymbolSequence> corpus;
    for (const auto& path : inputs) {
        auto lines = load_symbols(path, model ? &*model : nullptr);
        corpus.insert(corpus.end(), lines.begin(), lines.end());
    }
    const auto profile = zipf_profile(corpus);
    const std::string csv = zipf_csv(profile);
    if (csv_out.empty()) {
        out << csv;
    } else {
        io::write_file(csv_out, csv);
    }
    return ok;
}

struct ForecastFlags {
    std::string model;
    std::string history;
    std::string truth;
    std::string corpus;
    std::string output;
    std::size_t order = 3;
    double delta = 0.1;
    std::size_t horizon = 24;
    std::optional<double> tol;
    std::string mode = "greedy";
    std::uint64_t seed = 0;
};

int cmd_forecast(const ForecastFlags& f, std::ostream& out) {
    const AbbaModel model = load_model(f.model);
    const auto history = io::read_series_csv(f.history).columns;
    const double tol = f.tol.value_or(model.tol);
    const PredictMode mode = f.mode == "sample" ? PredictMode::sample : PredictMode::greedy;

    std::vector<SymbolSequence> extra;
    if (!f.corpus.empty()) extra = load_symbols(f.corpus, &model);

    std::optional<std::vector<TimeSeries>> truth;
    if (!f.truth.empty()) {
        truth = io::read_series_csv(f.truth).columns;
        if (truth->size() != history.size()) throw InvalidArgument("--truth and --history differ in column count");
    }

    std::vector<TimeSeries> forecasts;
    char buf[256];
    if (truth) {
        std::snprintf(buf, sizeof buf, "%-8s %14s %14s %16s %16s\n", "series", "mse", "mae", "persistence_mse",
                      "persistence_mae");
        out << buf;
    }
    for (std::size_t i = 0; i < history.size(); ++i) {
        std::vector<SymbolSequence> corpus = extra;
        corpus.push_back(transform(model, history[i], tol));
        NGramPredictor predictor(ngram_fit(corpus, f.order, f.delta, model.alphabet), mode, f.seed);
        ForecastResult r = forecast(model, predictor, history[i], f.horizon, tol);
        if (truth) {
            if ((*truth)[i].size() < f.horizon) throw InvalidArgument("--truth is shorter than --horizon");
            const std::span<const double> t((*truth)[i].data(), f.horizon);
            const ForecastScore s = evaluate_forecast(t, r.values);
            const ForecastScore p = evaluate_forecast(t, persistence_forecast(history[i], f.horizon));
            std::snprintf(buf, sizeof buf, "%-8zu %14s %14s %16s %16s\n", i, g6(s.mse).c_str(), g6(s.mae).c_str(),
                          g6(p.mse).c_str(), g6(p.mae).c_str());
            out << buf;
        }
        forecasts.push_back(std::move(r.values));
    }
    const std::string csv = io::format_series_csv(forecasts);
    if (f.output.empty()) {
        out << csv;
    } else {
        io::write_file(f.output, csv);
    }
    return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symbolic time series approximation: compress, symbolize, invert, forecast"};
    app.require_subcommand(1);

    FitFlags fit_flags;
    std::string model_out, symbols_out;
    auto* fit_cmd = app.add_subcommand("fit", "fit a model and write one symbol string per column");
    add_fit_flags(fit_cmd, fit_flags);
    fit_cmd->add_option("--model", model_out, "model JSON output")->required();
    fit_cmd->add_option("--symbols", symbols_out, "symbols output")->required();

    std::string model_in, input, symbols_path, output;
    std::optional<double> tol, t0;
    bool znorm = false;
    auto* transform_cmd = app.add_subcommand("transform", "symbolize new series with a fitted model");
    transform_cmd->add_option("--model", model_in)->required();
    transform_cmd->add_option("--input", input)->required();
    transform_cmd->add_option("--tol", tol, "defaults to the model's tol");
    transform_cmd->add_option("--symbols", symbols_path, "symbols output")->required();
    transform_cmd->add_flag("--znorm", znorm);

    auto* inverse_cmd = app.add_subcommand("inverse", "reconstruct series from symbols");
    inverse_cmd->add_option("--model", model_in)->required();
    inverse_cmd->add_option("--symbols", symbols_path)->required();
    inverse_cmd->add_option("--t0", t0, "start value; defaults to the values recorded at fit time");
    inverse_cmd->add_option("--output", output, "CSV output")->required();

    FitFlags rt_flags;
    auto* roundtrip_cmd = app.add_subcommand("roundtrip", "fit, reconstruct, and check every error bound");
    add_fit_flags(roundtrip_cmd, rt_flags);

    std::size_t line = 0, position = 0;
    std::string replacement;
    auto* perturb_cmd = app.add_subcommand("perturb", "replace one symbol and report reconstruction drift");
    perturb_cmd->add_option("--model", model_in)->required();
    perturb_cmd->add_option("--symbols", symbols_path)->required();
    perturb_cmd->add_option("--line", line, "which line of the symbols file")->capture_default_str();
    perturb_cmd->add_option("--position", position)->required();
    perturb_cmd->add_option("--replacement", replacement)->required();
    perturb_cmd->add_option("--t0", t0);

    std::vector<std::string> zipf_inputs;
    std::string csv_out;
    auto* zipf_cmd = app.add_subcommand("zipf", "rank-frequency table of a symbol corpus");
    zipf_cmd->add_option("--symbols", zipf_inputs, "one or more symbols files")->required();
    zipf_cmd->add_option("--model", model_in, "model whose alphabet splits the symbol lines");
    zipf_cmd->add_option("--csv", csv_out, "CSV output (default stdout)");

    ForecastFlags ff;
    auto* forecast_cmd = app.add_subcommand("forecast", "forecast with an n-gram symbol predictor");
    forecast_cmd->add_option("--model", ff.model)->required();
    forecast_cmd->add_option("--history", ff.history)->required();
    forecast_cmd->add_option("--horizon", ff.horizon)->capture_default_str();
    forecast_cmd->add_option("--predictor-order", ff.order)->capture_default_str();
    forecast_cmd->add_option("--delta", ff.delta)->capture_default_str();
    forecast_cmd->add_option("--tol", ff.tol, "defaults to the model's tol");
    forecast_cmd->add_option("--corpus", ff.corpus, "extra training symbols for the predictor");
    forecast_cmd->add_option("--mode", ff.mode)->check(CLI::IsMember({"greedy", "sample"}))->capture_default_str();
    forecast_cmd->add_option("--seed", ff.seed)->capture_default_str();
    forecast_cmd->add_option("--truth", ff.truth, "CSV with the true continuation");
    forecast_cmd->add_option("--output", ff.output, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    try {
        if (*fit_cmd) return cmd_fit(fit_flags, model_out, symbols_out, out);
        if (*transform_cmd) return cmd_transform(model_in, input, tol, znorm, symbols_path);
        if (*inverse_cmd) return cmd_inverse(model_in, symbols_path, t0, output, err);
        if (*roundtrip_cmd) return cmd_roundtrip(rt_flags, out);
        if (*perturb_cmd) return cmd_perturb(model_in, symbols_path, line, position, replacement, t0, out);
        if (*zipf_cmd) return cmd_zipf(zipf_inputs, model_in, csv_out, out);
        if (*forecast_cmd) return cmd_forecast(ff, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return parse_error;
    } catch (const AlphabetExhausted& e) {
        err << "error: " << e.what() << '\n';
        return alphabet_exhausted;
    } catch (const DecodeError& e) {
        err << "error: " << e.what() << '\n';
        return decode_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

}  // namespace abba::cli
