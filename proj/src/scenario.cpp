#include "geobell/scenario.hpp"

#include <cmath>
#include <numbers>

#include "geobell/errors.hpp"

namespace geobell {

namespace {

void requireDimension(int d) {
    if (d < 2) throw InvalidDimension("dimension d must be >= 2, got " + std::to_string(d));
}

void requireLabel(int d, int a, const char* what) {
    requireDimension(d);
    if (a < 0 || a >= d)
        throw IndexError(std::string(what) + " " + std::to_string(a) + " out of range [0, " +
                         std::to_string(d) + ")");
}

}  // namespace

int Scenario::gridSize() const {
    if (!bases) throw InvalidScenario("grid size requested for L = infinity");
    return d * *bases;
}

void validate(const Scenario& s) {
    if (s.d < 2) throw InvalidDimension("dimension d must be >= 2, got " + std::to_string(s.d));
    if (s.n < 2) throw InvalidScenario("number of parties N must be >= 2, got " + std::to_string(s.n));
    if (s.bases && *s.bases < 1)
        throw InvalidScenario("number of bases L must be >= 1, got " + std::to_string(*s.bases));
    if (s.biased() && s.d < 3)
        throw InvalidScenario("biased GHZ state requires d >= 3 (Schmidt rank d-1 >= 2)");
}

std::string_view toString(StateKind k) {
    switch (k) {
        case StateKind::UnbiasedGhz: return "unbiased";
        case StateKind::BiasedGhz: return "biased";
    }
    return "?";
}

std::string_view toString(Strategy k) {
    switch (k) {
        case Strategy::RealScalar: return "real";
        case Strategy::ComplexRoot: return "complex";
        case Strategy::VectorModD: return "vector";
        case Strategy::DichotomicModD: return "dichotomic";
    }
    return "?";
}

std::string_view toString(OffsetConvention k) {
    switch (k) {
        case OffsetConvention::HalfGridStep: return "half-step";
        case OffsetConvention::LiteralPaper: return "literal";
        case OffsetConvention::None: return "none";
    }
    return "?";
}

StateKind parseStateKind(std::string_view text) {
    if (text == "unbiased") return StateKind::UnbiasedGhz;
    if (text == "biased") return StateKind::BiasedGhz;
    throw InvalidScenario("unknown state '" + std::string(text) + "'");
}

Strategy parseStrategy(std::string_view text) {
    if (text == "real") return Strategy::RealScalar;
    if (text == "complex") return Strategy::ComplexRoot;
    if (text == "vector") return Strategy::VectorModD;
    if (text == "dichotomic") return Strategy::DichotomicModD;
    throw InvalidScenario("unknown strategy '" + std::string(text) + "'");
}

OffsetConvention parseOffsetConvention(std::string_view text) {
    if (text == "half-step") return OffsetConvention::HalfGridStep;
    if (text == "literal") return OffsetConvention::LiteralPaper;
    if (text == "none") return OffsetConvention::None;
    throw InvalidScenario("unknown offset convention '" + std::string(text) + "'");
}

std::vector<std::pair<std::string, std::string>> toRecord(const Scenario& s) {
    return {
        {"n", std::to_string(s.n)},
        {"d", std::to_string(s.d)},
        {"l", s.bases ? std::to_string(*s.bases) : std::string("inf")},
        {"state", std::string(toString(s.state))},
        {"strategy", std::string(toString(s.strategy))},
        {"offset", std::string(toString(s.offset))},
    };
}

Scenario fromRecord(const std::vector<std::pair<std::string, std::string>>& record) {
    Scenario s;
    for (const auto& [key, value] : record) {
        try {
            if (key == "n") s.n = std::stoi(value);
            else if (key == "d") s.d = std::stoi(value);
            else if (key == "l") s.bases = value == "inf" ? std::nullopt : std::optional<int>(std::stoi(value));
            else if (key == "state") s.state = parseStateKind(value);
            else if (key == "strategy") s.strategy = parseStrategy(value);
            else if (key == "offset") s.offset = parseOffsetConvention(value);
            else throw InvalidScenario("unknown scenario key '" + key + "'");
        } catch (const std::logic_error&) {
            throw InvalidScenario("bad value '" + value + "' for scenario key '" + key + "'");
        }
    }
    validate(s);
    return s;
}

void to_json(nlohmann::json& j, const Scenario& s) {
    j = nlohmann::json::object();
    j["n"] = s.n;
    j["d"] = s.d;
    if (s.bases) j["l"] = *s.bases;
    else j["l"] = "inf";
    j["state"] = toString(s.state);
    j["strategy"] = toString(s.strategy);
    j["offset"] = toString(s.offset);
}

void from_json(const nlohmann::json& j, Scenario& s) {
    std::vector<std::pair<std::string, std::string>> record;
    for (const auto& [key, value] : j.items())
        record.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
    s = fromRecord(record);
}

std::vector<double> realOutcomeValues(int d) {
    requireDimension(d);
    std::vector<double> values(static_cast<std::size_t>(d), -1.0 / d);
    values[0] = static_cast<double>(d - 1) / d;
    return values;
}

cplx complexOutcomeValue(int d, int a) {
    requireLabel(d, a, "outcome label");
    return std::polar(1.0, 2.0 * std::numbers::pi * a / d);
}

OutcomeVector vectorOutcome(int d, int i) {
    requireLabel(d, i, "vector index");
    if (d == 2) return {i == 0 ? -1.0 : 1.0};
    OutcomeVector v(static_cast<std::size_t>(d - 1), 0.0);
    if (i == d - 1) {
        v[0] = 1.0;
        return v;
    }
    const double m = d - 1;
    const double scale = std::sqrt(m * m - 1.0) / m;
    const OutcomeVector inner = vectorOutcome(d - 1, i);
    v[0] = -1.0 / m;
    for (std::size_t k = 0; k < inner.size(); ++k) v[k + 1] = scale * inner[k];
    return v;
}

double dichotomicValue(int d, int s) {
    requireLabel(d, s, "label sum");
    return s == 0 ? static_cast<double>(d - 1) / d : -1.0 / d;
}

std::vector<OutcomeValue> outcomeValues(Strategy strategy, int d) {
    requireDimension(d);
    std::vector<OutcomeValue> out;
    out.reserve(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) {
        switch (strategy) {
            case Strategy::RealScalar: out.emplace_back(realOutcomeValues(d)[a]); break;
            case Strategy::ComplexRoot: out.emplace_back(complexOutcomeValue(d, a)); break;
            case Strategy::VectorModD: out.emplace_back(vectorOutcome(d, a)); break;
            case Strategy::DichotomicModD: out.emplace_back(dichotomicValue(d, a)); break;
        }
    }
    return out;
}

}  // namespace geobell
