#pragma once

// Closed-form L -> infinity results. Ratios are evaluated in log space so that
// N in the hundreds does not overflow.

#include <iosfwd>
#include <string_view>
#include <vector>

namespace geobell::asymptotics {

enum class LimitFormula { RealUnbiased, ComplexUnbiased, BiasedModD };

struct LimitResult {
    int d = 0;
    int n = 0;
    double ratio = 0.0;
    LimitFormula formula = LimitFormula::RealUnbiased;
};

std::string_view toString(LimitFormula f);

/// Integral of E_QM^2 over the N-torus: (2 pi)^N (2d-1)(d-1) / (3 d^(2N+1)).
double continuousQuantumNorm(int d, int n);

double logLimitRatioRealUnbiased(int d, int n);
double limitRatioRealUnbiased(int d, int n);

double logLimitRatioComplex(int d, int n);
double limitRatioComplex(int d, int n);

/// Requires d >= 3.
double logLimitRatioBiased(int d, int n);
double limitRatioBiased(int d, int n);

LimitResult limitResult(LimitFormula formula, int d, int n);

/// ratio(d, n + 1) / ratio(d, n) for the real unbiased limit.
double growthFactor(int d, int n);

/// Largest d >= 2 with limitRatioComplex(d, N) > 1, scanning d up to 4N.
int complexViolationThreshold(int n);

struct SurfacePoint {
    int n = 0;
    int d = 0;
    double logRatio = 0.0;  // natural log
};

/// Natural log of the biased-state limit ratio over the given inclusive ranges,
/// ordered by N then d.
std::vector<SurfacePoint> biasedSurface(int nMin, int nMax, int dMin, int dMax);

/// CSV with header "n,d,log_ratio".
void writeSurfaceCsv(std::ostream& out, const std::vector<SurfacePoint>& points);

}  // namespace geobell::asymptotics
