#pragma once

// Closed-form GHZ correlation kernels. Every kernel depends on the settings
// only through the aggregate angle alpha' = sum_i alpha_i.

#include <vector>

#include "geobell/scenario.hpp"

namespace geobell::kernels {

/// |sum_{m} e^{-i m theta}|^2 with m = 0..d-1 (unbiased) or m = 1..d-1 (biased).
double dirichletKernel(int d, bool biased, double theta);

/// Probability that the detector labels sum to s (mod d). Independent of N.
double sumClassProbability(int d, int n, bool biased, int s, double alphaPrime);

/// 2 d^{-N-1} sum_{j=1}^{d-1} (d-j) cos(j alpha').
double kernelRealUnbiased(int d, int n, double alphaPrime);

/// ((d-1) e^{-i alpha'} + e^{i(d-1) alpha'}) / d.
cplx kernelComplexUnbiased(int d, double alphaPrime);

/// (d-2)/(d-1) e^{-i alpha'}.
cplx kernelComplexBiased(int d, double alphaPrime);

/// sum_s dichotomicValue(d, s) P(s).
double kernelDichotomic(int d, int n, bool biased, double alphaPrime);

/// sum_s vectorOutcome(d, s) P(s).
std::vector<double> kernelVector(int d, int n, bool biased, double alphaPrime);

/// <GHZ'| (x)_i J(alpha_i) |GHZ'> evaluated by the dense oracle at
/// (alpha', 0, ..., 0). Cached per (d, N, alpha').
double kernelRealBiased(int d, int n, double alphaPrime);

/// Dispatch for a scalar-entry strategy (RealScalar or DichotomicModD).
double realKernel(const Scenario& s, double alphaPrime);

/// Dispatch for ComplexRoot.
cplx complexKernel(const Scenario& s, double alphaPrime);

}  // namespace geobell::kernels
