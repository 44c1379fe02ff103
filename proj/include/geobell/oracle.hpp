#pragma once

// Exact dense-matrix computation of GHZ correlations. Slow but independent of
// every closed-form kernel, so it serves as ground truth in tests.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "geobell/scenario.hpp"

namespace geobell::oracle {

using DenseOperator = Eigen::MatrixXcd;

struct DenseState {
    Eigen::VectorXcd amplitudes;  // length d^N, first party most significant
    int n = 0;
    int d = 0;
};

/// Entry (m, a) = omega^{m a} / sqrt(d).
DenseOperator fourierMatrix(int d);

/// Diag(1, e^{i alpha}, ..., e^{(d-1) i alpha}) * F. Column a is the detector
/// that carries label a at this setting.
DenseOperator settingUnitary(int d, double alpha);

/// U(alpha) Diag((d-1)/d, -1/d, ..., -1/d) U(alpha)^dagger.
DenseOperator realObservable(int d, double alpha);

/// U(alpha) Diag(omega^0, ..., omega^{d-1}) U(alpha)^dagger; its product over
/// parties has expectation E[omega^{sum of labels}].
DenseOperator complexObservable(int d, double alpha);

DenseState ghzState(int n, int d, bool biased);

/// Applies `op` to party `party` of a d^N amplitude vector.
Eigen::VectorXcd applyLocal(const Eigen::VectorXcd& amplitudes, int n, int d, int party,
                            const DenseOperator& op);

/// <state| (x)_i J(alpha_i) |state>. Throws ConsistencyError if the imaginary
/// part exceeds 1e-12.
double expectationReal(const DenseState& state, std::span<const double> angles);

cplx expectationComplex(const DenseState& state, std::span<const double> angles);

/// Born-rule probabilities over Z_d^N, row-major with the first party most
/// significant.
std::vector<double> jointOutcomeDistribution(const DenseState& state, std::span<const double> angles);

/// Probability that the label sum equals s (mod d), for s = 0..d-1.
std::vector<double> sumClassDistribution(const DenseState& state, std::span<const double> angles);

}  // namespace geobell::oracle
