#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace geobell {

using cplx = std::complex<double>;

enum class StateKind { UnbiasedGhz, BiasedGhz };

enum class Strategy { RealScalar, ComplexRoot, VectorModD, DichotomicModD };

// Additive angle offset of the first observer when N is even.
enum class OffsetConvention { HalfGridStep, LiteralPaper, None };

/// Full description of one Bell experiment.
///
/// `bases` is the number of measurement bases per observer; an empty value
/// stands for the L -> infinity limit, which only the closed-form routines
/// accept.
struct Scenario {
    int n = 2;
    int d = 2;
    std::optional<int> bases = 2;
    StateKind state = StateKind::UnbiasedGhz;
    Strategy strategy = Strategy::RealScalar;
    OffsetConvention offset = OffsetConvention::HalfGridStep;

    bool biased() const { return state == StateKind::BiasedGhz; }
    bool finite() const { return bases.has_value(); }
    /// Number of grid angles per observer (d * L). Requires finite L.
    int gridSize() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws InvalidScenario / InvalidDimension when the invariants do not hold.
void validate(const Scenario& s);

std::string_view toString(StateKind k);
std::string_view toString(Strategy k);
std::string_view toString(OffsetConvention k);
StateKind parseStateKind(std::string_view text);
Strategy parseStrategy(std::string_view text);
OffsetConvention parseOffsetConvention(std::string_view text);

/// Flat key-value record (n, d, l, state, strategy, offset). L = infinity is "inf".
std::vector<std::pair<std::string, std::string>> toRecord(const Scenario& s);
Scenario fromRecord(const std::vector<std::pair<std::string, std::string>>& record);

void to_json(nlohmann::json& j, const Scenario& s);
void from_json(const nlohmann::json& j, Scenario& s);

// ---------------------------------------------------------------------------
// Outcome value sets.

using OutcomeVector = std::vector<double>;
using OutcomeValue = std::variant<double, cplx, OutcomeVector>;

/// [(d-1)/d, -1/d, ..., -1/d]; the first entry is the distinguished outcome.
std::vector<double> realOutcomeValues(int d);

/// exp(2 pi i a / d).
cplx complexOutcomeValue(int d, int a);

/// Unit (d-1)-vector v_{d,i} built recursively: v_{d,d-1} = (1,0,...,0) and
/// v_{d,i} = (-1/(d-1), sqrt((d-1)^2-1)/(d-1) * v_{d-1,i}) for i < d-1.
/// Any two distinct vectors have dot product -1/(d-1) and the d vectors sum to zero.
OutcomeVector vectorOutcome(int d, int i);

/// (d-1)/d when the label sum s is 0, -1/d otherwise.
double dichotomicValue(int d, int s);

/// Every value the strategy can assign to a global (or local, for
/// RealScalar/ComplexRoot) outcome, indexed by label.
std::vector<OutcomeValue> outcomeValues(Strategy strategy, int d);

}  // namespace geobell
