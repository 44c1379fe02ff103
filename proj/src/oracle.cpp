#include "geobell/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "geobell/errors.hpp"

namespace geobell::oracle {

namespace {

constexpr double kImagTolerance = 1e-12;

void requireAngles(const DenseState& state, std::span<const double> angles) {
    if (static_cast<int>(angles.size()) != state.n)
        throw ShapeMismatch("expected " + std::to_string(state.n) + " angles, got " +
                            std::to_string(angles.size()));
    if (state.amplitudes.size() != static_cast<Eigen::Index>(std::pow(state.d, state.n)))
        throw ShapeMismatch("state amplitude count does not match d^N");
}

Eigen::VectorXcd applyAll(const DenseState& state, std::span<const double> angles,
                          DenseOperator (*make)(int, double)) {
    Eigen::VectorXcd phi = state.amplitudes;
    for (int p = 0; p < state.n; ++p) phi = applyLocal(phi, state.n, state.d, p, make(state.d, angles[p]));
    return phi;
}

DenseOperator adjointUnitary(int d, double alpha) { return settingUnitary(d, alpha).adjoint(); }

}  // namespace

DenseOperator fourierMatrix(int d) {
    if (d < 2) throw InvalidDimension("fourierMatrix: d must be >= 2");
    DenseOperator f(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int m = 0; m < d; ++m)
        for (int a = 0; a < d; ++a)
            f(m, a) = std::polar(norm, 2.0 * std::numbers::pi * ((m * a) % d) / d);
    return f;
}

DenseOperator settingUnitary(int d, double alpha) {
    DenseOperator u = fourierMatrix(d);
    for (int m = 0; m < d; ++m) u.row(m) *= std::polar(1.0, m * alpha);
    return u;
}

DenseOperator realObservable(int d, double alpha) {
    const DenseOperator u = settingUnitary(d, alpha);
    Eigen::VectorXcd diag = Eigen::VectorXcd::Constant(d, cplx(-1.0 / d, 0.0));
    diag(0) = cplx(static_cast<double>(d - 1) / d, 0.0);
    return u * diag.asDiagonal() * u.adjoint();
}

DenseOperator complexObservable(int d, double alpha) {
    const DenseOperator u = settingUnitary(d, alpha);
    Eigen::VectorXcd diag(d);
    for (int a = 0; a < d; ++a) diag(a) = complexOutcomeValue(d, a);
    return u * diag.asDiagonal() * u.adjoint();
}

DenseState ghzState(int n, int d, bool biased) {
    if (d < 2) throw InvalidDimension("ghzState: d must be >= 2");
    if (n < 2) throw InvalidScenario("ghzState: N must be >= 2");
    if (biased && d < 3) throw InvalidScenario("ghzState: biased GHZ state requires d >= 3");
    DenseState state;
    state.n = n;
    state.d = d;
    Eigen::Index size = 1;
    for (int p = 0; p < n; ++p) size *= d;
    state.amplitudes = Eigen::VectorXcd::Zero(size);
    // |j>^{(x)N} sits at index j * (1 + d + ... + d^{N-1}).
    Eigen::Index stride = 0;
    for (Eigen::Index p = 0, w = 1; p < n; ++p, w *= d) stride += w;
    const int first = biased ? 1 : 0;
    const double amp = 1.0 / std::sqrt(static_cast<double>(d - first));
    for (int j = first; j < d; ++j) state.amplitudes(j * stride) = amp;
    return state;
}

Eigen::VectorXcd applyLocal(const Eigen::VectorXcd& amplitudes, int n, int d, int party,
                            const DenseOperator& op) {
    // View the vector as (outer, d, inner) with the party's index in the middle.
    Eigen::Index inner = 1;
    for (int p = party + 1; p < n; ++p) inner *= d;
    const Eigen::Index outer = amplitudes.size() / (inner * d);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(amplitudes.size());
    for (Eigen::Index o = 0; o < outer; ++o) {
        for (int row = 0; row < d; ++row) {
            for (int col = 0; col < d; ++col) {
                const cplx w = op(row, col);
                if (w == cplx{}) continue;
                const Eigen::Index dst = (o * d + row) * inner;
                const Eigen::Index src = (o * d + col) * inner;
                out.segment(dst, inner) += w * amplitudes.segment(src, inner);
            }
        }
    }
    return out;
}

double expectationReal(const DenseState& state, std::span<const double> angles) {
    requireAngles(state, angles);
    const cplx value = state.amplitudes.dot(applyAll(state, angles, &realObservable));
    if (std::abs(value.imag()) > kImagTolerance)
        throw ConsistencyError("real-observable expectation has imaginary part " + std::to_string(value.imag()));
    return value.real();
}

cplx expectationComplex(const DenseState& state, std::span<const double> angles) {
    requireAngles(state, angles);
    return state.amplitudes.dot(applyAll(state, angles, &complexObservable));
}

std::vector<double> jointOutcomeDistribution(const DenseState& state, std::span<const double> angles) {
    requireAngles(state, angles);
    // <u_{a_1}| ... <u_{a_N}| psi> is component (a_1..a_N) of (x)_i U(alpha_i)^dagger psi.
    const Eigen::VectorXcd phi = applyAll(state, angles, &adjointUnitary);
    std::vector<double> probs(static_cast<std::size_t>(phi.size()));
    for (Eigen::Index i = 0; i < phi.size(); ++i) probs[static_cast<std::size_t>(i)] = std::norm(phi(i));
    return probs;
}

std::vector<double> sumClassDistribution(const DenseState& state, std::span<const double> angles) {
    const std::vector<double> joint = jointOutcomeDistribution(state, angles);
    std::vector<double> classes(static_cast<std::size_t>(state.d), 0.0);
    for (std::size_t idx = 0; idx < joint.size(); ++idx) {
        std::size_t rest = idx;
        int sum = 0;
        for (int p = 0; p < state.n; ++p) {
            sum += static_cast<int>(rest % static_cast<std::size_t>(state.d));
            rest /= static_cast<std::size_t>(state.d);
        }
        classes[static_cast<std::size_t>(sum % state.d)] += joint[idx];
    }
    return classes;
}

}  // namespace geobell::oracle
