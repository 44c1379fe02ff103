#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "geobell/grid.hpp"
#include "geobell/scenario.hpp"

namespace geobell {

/// Deterministic local model. For observer i and basis k the offset c makes
/// the detector at grid position j carry label (c - j) mod d, so shifting a
/// setting by 2 pi / d always lowers its label by one.
struct LhvModel {
    int n = 0;
    int d = 0;
    int bases = 0;
    std::vector<int> offsets;  // n * bases, observer-major

    static LhvModel zeros(const Scenario& s);

    int offset(int party, int basis) const { return offsets[static_cast<std::size_t>(party * bases + basis)]; }
    int& offset(int party, int basis) { return offsets[static_cast<std::size_t>(party * bases + basis)]; }
    /// Label of observer `party` at grid index t.
    int label(int party, int t) const;

    friend bool operator==(const LhvModel&, const LhvModel&) = default;
};

enum class Optimizer { Exhaustive, AlternatingAscent, Packed };

/// How a complex overlap is turned into the LHV score. Modulus maximizes over
/// a global phase; RealPart takes Re of the raw overlap.
enum class ComplexOverlap { Modulus, RealPart };

std::string_view toString(Optimizer o);
std::string_view toString(ComplexOverlap c);
Optimizer parseOptimizer(std::string_view text);
ComplexOverlap parseComplexOverlap(std::string_view text);

struct SearchOptions {
    /// Empty selects exhaustive search when within the cap, else ascent.
    std::optional<Optimizer> method;
    int restarts = 64;
    std::uint64_t seed = 0;
    double exhaustiveCap = 1e7;
    ComplexOverlap complexOverlap = ComplexOverlap::Modulus;
};

struct ViolationReport {
    Scenario scenario;
    double quantumNorm = 0.0;
    double lhvMax = 0.0;
    double ratio = 0.0;
    LhvModel bestModel;
    Optimizer optimizer = Optimizer::Exhaustive;
    int restartsUsed = 0;
    std::uint64_t seed = 0;
    ComplexOverlap complexOverlap = ComplexOverlap::Modulus;
    cplx overlap{};  // raw E_QM . conj(E_LR) of the best model
};

void to_json(nlohmann::json& j, const LhvModel& m);
void to_json(nlohmann::json& j, const ViolationReport& r);

CorrelationTensor lhvTensor(const LhvModel& model, const Scenario& s);

/// Label 0 on every grid angle in [-pi/d, pi/d) (mod 2 pi), for each observer.
LhvModel packedModel(const Scenario& s);

/// Fast overlap E_QM . conj(E_LR) through the aggregate-angle profile.
cplx modelOverlap(const Scenario& s, const LhvModel& model);

/// Score that the optimizers maximize (real part, or modulus for ComplexRoot
/// under ComplexOverlap::Modulus).
double modelScore(const Scenario& s, const LhvModel& model, ComplexOverlap mode = ComplexOverlap::Modulus);

ViolationReport exhaustiveMax(const Scenario& s, const SearchOptions& options = {});

/// Optional per-step trace of the objective, for monotonicity checks.
struct AscentTrace {
    std::vector<std::vector<double>> objective;  // one sequence per restart
};

ViolationReport alternatingAscent(const Scenario& s, int restarts, std::uint64_t seed,
                                  const SearchOptions& options = {}, AscentTrace* trace = nullptr);

ViolationReport violationRatio(const Scenario& s, const SearchOptions& options = {});

/// d^(L N) as a floating-point count.
double modelSpaceSize(const Scenario& s);

}  // namespace geobell
