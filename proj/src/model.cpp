#include "abba/core.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "json.hpp"

namespace abba {

ScaledTuple Codebook::metric_center(std::size_t i) const {
    const ScaledTuple& c = centers.at(i);
    return {scl > 0.0 ? c.x : 0.0, c.y};
}

std::pair<double, double> Codebook::decode(std::size_t i) const {
    const ScaledTuple& c = centers.at(i);
    const double len = scl > 0.0 ? c.x * sigma_len / scl : c.x * sigma_len;
    return {len, c.y * sigma_second};
}

ScaledTuple Codebook::scale(const Piece& p) const {
    const double x = scl > 0.0 ? scl * static_cast<double>(p.len) / sigma_len : 0.0;
    return {x, p.second / sigma_second};
}

std::size_t Codebook::nearest(ScaledTuple t) const {
    if (centers.empty()) throw InvalidArgument("codebook is empty");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < centers.size(); ++i) {
        const double d = squared_distance(t, metric_center(i));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

std::vector<std::size_t> AbbaModel::encode(const SymbolSequence& symbols) const {
    std::vector<std::size_t> out;
    out.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        auto idx = alphabet.find(symbols[i]);
        if (!idx) throw DecodeError(symbols[i], i);
        out.push_back(*idx);
    }
    return out;
}

SymbolSequence AbbaModel::symbols_for(std::span<const std::size_t> centers) const {
    SymbolSequence out;
    out.reserve(centers.size());
    for (std::size_t c : centers) out.push_back(alphabet[c]);
    return out;
}

namespace {

std::string fmt17(double v) {
    // "-0" would come back as the integer 0
    if (v == 0.0 && std::signbit(v)) return "-0.0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using nlohmann::json;

const json& field(const json& j, const char* name, const std::string& source) {
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(source, 0, 0, std::string("missing field '") + name + "'");
    return *it;
}

double number(const json& j, const char* name, const std::string& source) {
    const json& v = field(j, name, source);
    if (!v.is_number()) throw ParseError(source, 0, 0, std::string("field '") + name + "' must be a number");
    return v.get<double>();
}

std::string text(const json& j, const char* name, const std::string& source) {
    const json& v = field(j, name, source);
    if (!v.is_string()) throw ParseError(source, 0, 0, std::string("field '") + name + "' must be a string");
    return v.get<std::string>();
}

}  // namespace

std::string to_json(const AbbaModel& m) {
    const Codebook& cb = m.codebook;
    std::string out = "{\n";
    out += "  \"version\": 1,\n";
    out += "  \"variant\": \"" + std::string(to_string(m.variant)) + "\",\n";
    out += "  \"tol\": " + fmt17(m.tol) + ",\n";
    out += "  \"alpha\": " + fmt17(m.alpha) + ",\n";
    out += "  \"scl\": " + fmt17(cb.scl) + ",\n";
    out += "  \"sigma_len\": " + fmt17(cb.sigma_len) + ",\n";
    out += "  \"sigma_second\": " + fmt17(cb.sigma_second) + ",\n";
    out += "  \"digitizer\": \"" + std::string(to_string(m.digitizer)) + "\",\n";
    out += "  \"centers\": [";
    for (std::size_t i = 0; i < cb.centers.size(); ++i) {
        if (i) out += ", ";
        out += "[" + fmt17(cb.centers[i].x) + ", " + fmt17(cb.centers[i].y) + "]";
    }
    out += "],\n  \"cardinalities\": [";
    for (std::size_t i = 0; i < cb.cardinalities.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(cb.cardinalities[i]);
    }
    out += "],\n  \"alphabet\": [";
    for (std::size_t i = 0; i < m.alphabet.size(); ++i) {
        if (i) out += ", ";
        out += json(m.alphabet[i]).dump();
    }
    out += "],\n  \"initial_values\": [";
    for (std::size_t i = 0; i < m.initial_values.size(); ++i) {
        if (i) out += ", ";
        out += fmt17(m.initial_values[i]);
    }
    out += "]\n}\n";
    return out;
}

AbbaModel model_from_json(std::string_view text_in, const std::string& source) {
    json j;
    try {
        j = json::parse(text_in);
    } catch (const json::parse_error& e) {
        throw ParseError(source, 0, e.byte, e.what());
    }
    if (!j.is_object()) throw ParseError(source, 1, 1, "model must be a JSON object");
    if (number(j, "version", source) != 1) throw ParseError(source, 0, 0, "unsupported model version");

    AbbaModel m;
    try {
        m.variant = parse_variant(text(j, "variant", source));
        m.digitizer = parse_digitizer(text(j, "digitizer", source));
    } catch (const InvalidArgument& e) {
        throw ParseError(source, 0, 0, e.what());
    }
    m.tol = number(j, "tol", source);
    m.alpha = number(j, "alpha", source);

    Codebook& cb = m.codebook;
    cb.variant = m.variant;
    cb.scl = number(j, "scl", source);
    cb.sigma_len = number(j, "sigma_len", source);
    cb.sigma_second = number(j, "sigma_second", source);
    if (cb.scl < 0.0 || !(cb.sigma_len > 0.0) || !(cb.sigma_second > 0.0)) {
        throw ParseError(source, 0, 0, "scl must be >= 0 and sigmas > 0");
    }

    const json& centers = field(j, "centers", source);
    const json& cards = field(j, "cardinalities", source);
    const json& alpha = field(j, "alphabet", source);
    if (!centers.is_array() || !cards.is_array() || !alpha.is_array()) {
        throw ParseError(source, 0, 0, "centers, cardinalities and alphabet must be arrays");
    }
    for (const auto& c : centers) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
            throw ParseError(source, 0, 0, "each center must be [x, y]");
        }
        cb.centers.push_back({c[0].get<double>(), c[1].get<double>()});
    }
    for (const auto& c : cards) {
        if (!c.is_number_unsigned()) throw ParseError(source, 0, 0, "cardinalities must be non-negative integers");
        cb.cardinalities.push_back(c.get<std::size_t>());
    }
    std::vector<std::string> symbols;
    for (const auto& s : alpha) {
        if (!s.is_string()) throw ParseError(source, 0, 0, "alphabet entries must be strings");
        symbols.push_back(s.get<std::string>());
    }
    if (cb.centers.size() != cb.cardinalities.size() || cb.centers.size() != symbols.size()) {
        throw ParseError(source, 0, 0, "centers, cardinalities and alphabet must have equal length");
    }
    if (cb.centers.empty()) throw ParseError(source, 0, 0, "model has no centers");
    try {
        bool single = true;
        for (const auto& s : symbols) single = single && s.size() == 1;
        m.alphabet = Alphabet(std::move(symbols),
                              single ? AlphabetSource::builtin : AlphabetSource::external_token_file);
    } catch (const InvalidArgument& e) {
        throw ParseError(source, 0, 0, e.what());
    }
    if (auto it = j.find("initial_values"); it != j.end()) {
        if (!it->is_array()) throw ParseError(source, 0, 0, "initial_values must be an array");
        for (const auto& v : *it) {
            if (!v.is_number()) throw ParseError(source, 0, 0, "initial_values must be numbers");
            m.initial_values.push_back(v.get<double>());
        }
    }
    return m;
}

}  // namespace abba
