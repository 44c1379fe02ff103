#include "geobell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "geobell/grid.hpp"
#include "geobell/kernels.hpp"
#include "geobell/lhv.hpp"
#include "geobell/oracle.hpp"

namespace geobell::verify {

namespace {

constexpr double kKernelTolerance = 1e-10;
constexpr double kNormTolerance = 1e-12;
constexpr double kRatioTolerance = 1e-9;

struct Case {
    int d;
    int n;
    bool biased;
};

std::vector<Case> oracleCases(bool quick) {
    std::vector<Case> cases;
    const int maxD = quick ? 3 : 5;
    const int maxN = quick ? 3 : 4;
    for (int d = 2; d <= maxD; ++d)
        for (int n = 2; n <= maxN; ++n) {
            cases.push_back({d, n, false});
            if (d >= 3) cases.push_back({d, n, true});
        }
    return cases;
}

std::string format(double value) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << value;
    return os.str();
}

// Max deviation between oracle and kernel over random angle tuples.
CheckResult compareOnRandomAngles(const std::string& name, const VerifyOptions& options, bool biasedOnly,
                                  bool unbiasedOnly, double tolerance,
                                  const std::function<double(const oracle::DenseState&, const Case&,
                                                              std::span<const double>, double)>& deviation) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const int samples = options.quick ? 25 : 200;
    double worst = 0.0;
    int cases = 0;
    for (const Case& c : oracleCases(options.quick)) {
        if ((biasedOnly && !c.biased) || (unbiasedOnly && c.biased)) continue;
        ++cases;
        const oracle::DenseState state = oracle::ghzState(c.n, c.d, c.biased);
        std::vector<double> angles(static_cast<std::size_t>(c.n));
        for (int i = 0; i < samples; ++i) {
            double sum = 0.0;
            for (double& a : angles) {
                a = angle(rng);
                sum += a;
            }
            worst = std::max(worst, deviation(state, c, angles, sum));
        }
    }
    return {name, worst <= tolerance,
            std::to_string(cases) + " cases x " + std::to_string(samples) + " angle tuples, max deviation " +
                format(worst)};
}

CheckResult strategyEquivalence(bool quick) {
    std::vector<std::tuple<int, int, int>> scenarios = {{2, 2, 2}, {3, 2, 2}, {2, 3, 3}, {3, 2, 3}};
    if (!quick) {
        scenarios.insert(scenarios.end(), {{4, 3, 2}, {3, 3, 3}, {2, 2, 4}, {3, 2, 4}, {5, 2, 2}, {4, 2, 3}});
    }
    double worst = 0.0;
    for (auto [d, l, n] : scenarios) {
        std::vector<double> ratios;
        for (Strategy st : {Strategy::RealScalar, Strategy::VectorModD, Strategy::DichotomicModD}) {
            const Scenario s{.n = n, .d = d, .bases = l, .strategy = st};
            ratios.push_back(violationRatio(s).ratio);
        }
        const auto [lo, hi] = std::ranges::minmax(ratios);
        worst = std::max(worst, hi - lo);
    }
    return {"strategy.equivalence", worst <= kRatioTolerance,
            std::to_string(scenarios.size()) + " scenarios, max spread " + format(worst)};
}

CheckResult optimizerCrossValidation(bool quick) {
    std::vector<Scenario> scenarios;
    const int maxD = 3;
    for (int d = 2; d <= maxD; ++d)
        for (int l = 1; l <= (quick ? 2 : 3); ++l)
            for (int n = 2; n <= 3; ++n)
                for (Strategy st : {Strategy::RealScalar, Strategy::ComplexRoot, Strategy::VectorModD,
                                    Strategy::DichotomicModD}) {
                    for (StateKind state : {StateKind::UnbiasedGhz, StateKind::BiasedGhz}) {
                        if (state == StateKind::BiasedGhz && d < 3) continue;
                        Scenario s{.n = n, .d = d, .bases = l, .state = state, .strategy = st};
                        // Skip grids on which the quantum tensor vanishes (qubit pair, one basis).
                        if (modelSpaceSize(s) <= 1e6 && quantumNorm(s) > 1e-12) scenarios.push_back(s);
                    }
                }
    double worst = 0.0;
    for (const Scenario& s : scenarios) {
        const double exact = exhaustiveMax(s).lhvMax;
        const double ascent = alternatingAscent(s, 64, 7).lhvMax;
        worst = std::max(worst, std::abs(exact - ascent) / std::max(1e-300, std::abs(exact)));
    }
    return {"optimizer.cross-validation", worst <= kRatioTolerance,
            std::to_string(scenarios.size()) + " scenarios, max relative gap " + format(worst)};
}

}  // namespace

std::vector<CheckResult> runVerification(const VerifyOptions& options) {
    std::vector<CheckResult> results;
    const double scale = options.realKernelScale;

    results.push_back(compareOnRandomAngles(
        "oracle.real-unbiased", options, false, true, kKernelTolerance,
        [scale](const oracle::DenseState& st, const Case& c, std::span<const double> a, double sum) {
            return std::abs(oracle::expectationReal(st, a) - scale * kernels::kernelRealUnbiased(c.d, c.n, sum));
        }));
    results.push_back(compareOnRandomAngles(
        "oracle.real-biased", options, true, false, kKernelTolerance,
        [](const oracle::DenseState& st, const Case& c, std::span<const double> a, double sum) {
            return std::abs(oracle::expectationReal(st, a) - kernels::kernelRealBiased(c.d, c.n, sum));
        }));
    results.push_back(compareOnRandomAngles(
        "oracle.complex", options, false, false, kKernelTolerance,
        [](const oracle::DenseState& st, const Case& c, std::span<const double> a, double sum) {
            const cplx k = c.biased ? kernels::kernelComplexBiased(c.d, sum) : kernels::kernelComplexUnbiased(c.d, sum);
            return std::abs(oracle::expectationComplex(st, a) - k);
        }));
    results.push_back(compareOnRandomAngles(
        "oracle.sum-class", options, false, false, kKernelTolerance,
        [](const oracle::DenseState& st, const Case& c, std::span<const double> a, double sum) {
            const std::vector<double> classes = oracle::sumClassDistribution(st, a);
            double worst = 0.0;
            for (int s = 0; s < c.d; ++s)
                worst = std::max(worst, std::abs(classes[static_cast<std::size_t>(s)] -
                                                 kernels::sumClassProbability(c.d, c.n, c.biased, s, sum)));
            return worst;
        }));
    results.push_back(compareOnRandomAngles(
        "oracle.dichotomic", options, false, false, kKernelTolerance,
        [](const oracle::DenseState& st, const Case& c, std::span<const double> a, double sum) {
            const std::vector<double> classes = oracle::sumClassDistribution(st, a);
            double e = 0.0;
            for (int s = 0; s < c.d; ++s) e += dichotomicValue(c.d, s) * classes[static_cast<std::size_t>(s)];
            return std::abs(e - kernels::kernelDichotomic(c.d, c.n, c.biased, sum));
        }));
    results.push_back(compareOnRandomAngles(
        "oracle.vector", options, false, false, kKernelTolerance,
        [](const oracle::DenseState& st, const Case& c, std::span<const double> a, double sum) {
            const std::vector<double> classes = oracle::sumClassDistribution(st, a);
            const std::vector<double> k = kernels::kernelVector(c.d, c.n, c.biased, sum);
            double worst = 0.0;
            for (std::size_t comp = 0; comp < k.size(); ++comp) {
                double e = 0.0;
                for (int s = 0; s < c.d; ++s) e += classes[static_cast<std::size_t>(s)] * vectorOutcome(c.d, s)[comp];
                worst = std::max(worst, std::abs(e - k[comp]));
            }
            return worst;
        }));
    results.push_back(compareOnRandomAngles(
        "oracle.joint-normalization", options, false, false, kNormTolerance,
        [](const oracle::DenseState& st, const Case&, std::span<const double> a, double) {
            double total = 0.0;
            for (double p : oracle::jointOutcomeDistribution(st, a)) total += p;
            return std::abs(total - 1.0);
        }));
    // Each outcome tuple carries probability P(class, alpha') / d^(N-1).
    results.push_back(compareOnRandomAngles(
        "oracle.joint-reducibility", options, false, false, kKernelTolerance,
        [](const oracle::DenseState& st, const Case& c, std::span<const double> a, double sum) {
            const std::vector<double> joint = oracle::jointOutcomeDistribution(st, a);
            const double multiplicity = std::pow(static_cast<double>(c.d), c.n - 1);
            double worst = 0.0;
            for (std::size_t flat = 0; flat < joint.size(); ++flat) {
                int labelSum = 0;
                for (std::size_t rest = flat; rest > 0; rest /= static_cast<std::size_t>(c.d))
                    labelSum += static_cast<int>(rest % static_cast<std::size_t>(c.d));
                const double expected =
                    kernels::sumClassProbability(c.d, c.n, c.biased, labelSum % c.d, sum) / multiplicity;
                worst = std::max(worst, std::abs(joint[flat] - expected));
            }
            return worst;
        }));
    results.push_back(strategyEquivalence(options.quick));
    results.push_back(optimizerCrossValidation(options.quick));
    return results;
}

bool printResults(std::ostream& out, const std::vector<CheckResult>& results) {
    bool all = true;
    for (const CheckResult& r : results) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
    }
    return all;
}

}  // namespace geobell::verify
