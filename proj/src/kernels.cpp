#include "geobell/kernels.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <tuple>

#include "geobell/errors.hpp"
#include "geobell/oracle.hpp"

namespace geobell::kernels {

namespace {

void requireBiasedDimension(int d) {
    if (d < 3) throw InvalidDimension("biased kernels require d >= 3, got " + std::to_string(d));
}

class RealBiasedCache {
public:
    double get(int d, int n, double alphaPrime) {
        const double reduced = std::remainder(alphaPrime, 2.0 * std::numbers::pi);
        const Key key{d, n, std::bit_cast<std::uint64_t>(reduced)};
        {
            std::shared_lock lock(mutex_);
            if (auto it = values_.find(key); it != values_.end()) return it->second;
        }
        const oracle::DenseState state = oracle::ghzState(n, d, true);
        std::vector<double> angles(static_cast<std::size_t>(n), 0.0);
        angles[0] = reduced;
        const double value = oracle::expectationReal(state, angles);
        std::unique_lock lock(mutex_);
        values_.emplace(key, value);
        return value;
    }

private:
    using Key = std::tuple<int, int, std::uint64_t>;
    std::shared_mutex mutex_;
    std::map<Key, double> values_;
};

RealBiasedCache& realBiasedCache() {
    static RealBiasedCache cache;
    return cache;
}

}  // namespace

double dirichletKernel(int d, bool biased, double theta) {
    if (d < 2) throw InvalidDimension("dirichletKernel: d must be >= 2");
    if (biased) requireBiasedDimension(d);
    cplx sum{};
    for (int m = biased ? 1 : 0; m < d; ++m) sum += std::polar(1.0, -m * theta);
    return std::norm(sum);
}

double sumClassProbability(int d, int n, bool biased, int s, double alphaPrime) {
    validate(Scenario{.n = n, .d = d, .bases = 1, .state = biased ? StateKind::BiasedGhz : StateKind::UnbiasedGhz});
    if (s < 0 || s >= d) throw IndexError("sum class out of range");
    const double theta = alphaPrime + 2.0 * std::numbers::pi * s / d;
    const double norm = biased ? static_cast<double>(d) * (d - 1) : static_cast<double>(d) * d;
    return dirichletKernel(d, biased, theta) / norm;
}

double kernelRealUnbiased(int d, int n, double alphaPrime) {
    if (d < 2) throw InvalidDimension("kernelRealUnbiased: d must be >= 2");
    double sum = 0.0;
    for (int j = 1; j < d; ++j) sum += (d - j) * std::cos(j * alphaPrime);
    return 2.0 * std::pow(static_cast<double>(d), -n - 1) * sum;
}

cplx kernelComplexUnbiased(int d, double alphaPrime) {
    if (d < 2) throw InvalidDimension("kernelComplexUnbiased: d must be >= 2");
    return (static_cast<double>(d - 1) * std::polar(1.0, -alphaPrime) + std::polar(1.0, (d - 1) * alphaPrime)) /
           static_cast<double>(d);
}

cplx kernelComplexBiased(int d, double alphaPrime) {
    requireBiasedDimension(d);
    return static_cast<double>(d - 2) / (d - 1) * std::polar(1.0, -alphaPrime);
}

double kernelDichotomic(int d, int n, bool biased, double alphaPrime) {
    double e = 0.0;
    for (int s = 0; s < d; ++s) e += dichotomicValue(d, s) * sumClassProbability(d, n, biased, s, alphaPrime);
    return e;
}

std::vector<double> kernelVector(int d, int n, bool biased, double alphaPrime) {
    std::vector<double> e(static_cast<std::size_t>(d - 1), 0.0);
    for (int s = 0; s < d; ++s) {
        const double p = sumClassProbability(d, n, biased, s, alphaPrime);
        const OutcomeVector v = vectorOutcome(d, s);
        for (std::size_t k = 0; k < v.size(); ++k) e[k] += p * v[k];
    }
    return e;
}

double kernelRealBiased(int d, int n, double alphaPrime) {
    requireBiasedDimension(d);
    if (n < 2) throw InvalidScenario("kernelRealBiased: N must be >= 2");
    return realBiasedCache().get(d, n, alphaPrime);
}

double realKernel(const Scenario& s, double alphaPrime) {
    switch (s.strategy) {
        case Strategy::RealScalar:
            return s.biased() ? kernelRealBiased(s.d, s.n, alphaPrime) : kernelRealUnbiased(s.d, s.n, alphaPrime);
        case Strategy::DichotomicModD: return kernelDichotomic(s.d, s.n, s.biased(), alphaPrime);
        default: throw InvalidScenario("realKernel: strategy has no scalar kernel");
    }
}

cplx complexKernel(const Scenario& s, double alphaPrime) {
    if (s.strategy != Strategy::ComplexRoot) throw InvalidScenario("complexKernel: strategy is not complex");
    return s.biased() ? kernelComplexBiased(s.d, alphaPrime) : kernelComplexUnbiased(s.d, alphaPrime);
}

}  // namespace geobell::kernels
