#include "geobell/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "geobell/errors.hpp"
#include "geobell/parallel.hpp"

namespace geobell::asymptotics {

namespace {

constexpr double kPi = std::numbers::pi;

void requireArgs(int d, int n, int minD) {
    if (d < minD) throw InvalidDimension("d must be >= " + std::to_string(minD) + ", got " + std::to_string(d));
    if (n < 2) throw InvalidScenario("N must be >= 2, got " + std::to_string(n));
}

double logAddExp(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double hi = std::max(a, b);
    return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// log sum_{k=1}^{d-1} c_k (2 sin(k pi / d) / k)^N with nonnegative weights c_k.
template <class Weight>
double logSineSum(int d, int n, Weight weight) {
    double acc = -std::numeric_limits<double>::infinity();
    for (int k = 1; k < d; ++k) {
        const double w = weight(k);
        if (w <= 0.0) continue;
        const double base = 2.0 * std::sin(k * kPi / d) / k;
        acc = logAddExp(acc, std::log(w) + n * std::log(base));
    }
    return acc;
}

}  // namespace

std::string_view toString(LimitFormula f) {
    switch (f) {
        case LimitFormula::RealUnbiased: return "real";
        case LimitFormula::ComplexUnbiased: return "complex";
        case LimitFormula::BiasedModD: return "biased";
    }
    return "?";
}

double continuousQuantumNorm(int d, int n) {
    requireArgs(d, n, 2);
    const double log = n * std::log(2.0 * kPi) + std::log((2.0 * d - 1.0) * (d - 1.0)) - std::log(3.0) -
                       (2.0 * n + 1.0) * std::log(static_cast<double>(d));
    return std::exp(log);
}

double logLimitRatioRealUnbiased(int d, int n) {
    requireArgs(d, n, 2);
    const double numerator = n * std::log(2.0 * kPi / d) + std::log((2.0 * d - 1.0) * (d - 1.0));
    const double denominator = std::log(6.0) + logSineSum(d, n, [d](int k) { return static_cast<double>(d - k); });
    return numerator - denominator;
}

double limitRatioRealUnbiased(int d, int n) { return std::exp(logLimitRatioRealUnbiased(d, n)); }

double logLimitRatioComplex(int d, int n) {
    requireArgs(d, n, 2);
    const double m = d - 1.0;
    const double prefactor = std::log(m * m + 1.0) - std::log(static_cast<double>(d)) - logAddExp(0.0, (n + 1) * std::log(m));
    return prefactor + n * std::log(kPi * m / (d * std::sin(kPi / d)));
}

double limitRatioComplex(int d, int n) { return std::exp(logLimitRatioComplex(d, n)); }

double logLimitRatioBiased(int d, int n) {
    requireArgs(d, n, 3);
    const double numerator = std::log(2.0 * d * d - 7.0 * d + 6.0) + n * std::log(2.0 * kPi);
    const double denominator = std::log(6.0) + n * std::log(static_cast<double>(d)) +
                               logSineSum(d, n, [d](int k) { return static_cast<double>(d - k - 1); });
    return numerator - denominator;
}

double limitRatioBiased(int d, int n) { return std::exp(logLimitRatioBiased(d, n)); }

LimitResult limitResult(LimitFormula formula, int d, int n) {
    LimitResult r{d, n, 0.0, formula};
    switch (formula) {
        case LimitFormula::RealUnbiased: r.ratio = limitRatioRealUnbiased(d, n); break;
        case LimitFormula::ComplexUnbiased: r.ratio = limitRatioComplex(d, n); break;
        case LimitFormula::BiasedModD: r.ratio = limitRatioBiased(d, n); break;
    }
    return r;
}

double growthFactor(int d, int n) {
    return std::exp(logLimitRatioRealUnbiased(d, n + 1) - logLimitRatioRealUnbiased(d, n));
}

int complexViolationThreshold(int n) {
    if (n < 2) throw InvalidScenario("N must be >= 2");
    int threshold = 1;
    for (int d = 2; d <= std::max(4 * n, 8); ++d)
        if (logLimitRatioComplex(d, n) > 0.0) threshold = d;
    return threshold;
}

std::vector<SurfacePoint> biasedSurface(int nMin, int nMax, int dMin, int dMax) {
    if (nMin < 2 || dMin < 3 || nMax < nMin || dMax < dMin)
        throw InvalidScenario("surface ranges must satisfy 2 <= n-min <= n-max and 3 <= d-min <= d-max");
    const int rows = nMax - nMin + 1;
    const int cols = dMax - dMin + 1;
    std::vector<SurfacePoint> points(static_cast<std::size_t>(rows * cols));
    parallelFor(points.size(), [&](std::size_t i) {
        const int n = nMin + static_cast<int>(i) / cols;
        const int d = dMin + static_cast<int>(i) % cols;
        points[i] = {n, d, logLimitRatioBiased(d, n)};
    });
    return points;
}

void writeSurfaceCsv(std::ostream& out, const std::vector<SurfacePoint>& points) {
    out << "n,d,log_ratio\n";
    out << std::setprecision(17);
    for (const SurfacePoint& p : points) out << p.n << ',' << p.d << ',' << p.logRatio << '\n';
}

}  // namespace geobell::asymptotics
