#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "geobell/errors.hpp"
#include "geobell/oracle.hpp"

using namespace geobell;
using namespace geobell::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

double maxAbs(const DenseOperator& m) { return m.cwiseAbs().maxCoeff(); }

// Full Kronecker-product operator, an independent route to (x)_i O_i.
DenseOperator kron(const std::vector<DenseOperator>& ops) {
    DenseOperator acc = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i) {
        DenseOperator next = Eigen::kroneckerProduct(acc, ops[i]).eval();
        acc = next;
    }
    return acc;
}

}  // namespace

TEST_CASE("Fourier matrix") {
    const DenseOperator h = fourierMatrix(2);
    const double r = 1.0 / std::sqrt(2.0);
    DenseOperator expected(2, 2);
    expected << r, r, r, -r;
    CHECK(maxAbs(h - expected) < 1e-15);

    const cplx w = std::polar(1.0, 2 * kPi / 3);
    CHECK(std::abs(fourierMatrix(3)(1, 2) - w * w / std::sqrt(3.0)) < 1e-15);

    const DenseOperator f5 = fourierMatrix(5);
    CHECK(maxAbs(f5 * f5.adjoint() - DenseOperator::Identity(5, 5)) < 1e-14);
    CHECK_THROWS_AS(fourierMatrix(1), InvalidDimension);
}

TEST_CASE("setting unitary") {
    CHECK(maxAbs(settingUnitary(4, 0.0) - fourierMatrix(4)) < 1e-15);
    const DenseOperator u = settingUnitary(4, 0.7);
    CHECK(maxAbs(u * u.adjoint() - DenseOperator::Identity(4, 4)) < 1e-14);

    // A shift by 2 pi / d permutes columns cyclically.
    const DenseOperator u0 = settingUnitary(3, 0.0);
    const DenseOperator u1 = settingUnitary(3, 2 * kPi / 3);
    for (int a = 0; a < 3; ++a) {
        const cplx overlap = u0.col((a + 1) % 3).dot(u1.col(a));
        CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-14);
    }
}

TEST_CASE("real observable") {
    DenseOperator j2(2, 2);
    j2 << 0, 0.5, 0.5, 0;
    CHECK(maxAbs(realObservable(2, 0.0) - j2) < 1e-15);

    const DenseOperator j3 = realObservable(3, 0.0);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(std::abs(j3(r, c) - cplx(r == c ? 0.0 : 1.0 / 3.0, 0.0)) < 1e-15);

    const DenseOperator j4 = realObservable(4, 1.1);
    CHECK(maxAbs(j4 - j4.adjoint()) < 1e-15);
    CHECK(std::abs(j4.trace()) < 1e-14);
    Eigen::SelfAdjointEigenSolver<DenseOperator> eig(j4);
    const Eigen::VectorXd values = eig.eigenvalues();  // ascending
    CHECK(values(0) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(values(1) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(values(2) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(values(3) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("shifting the angle by 2 pi / d relabels the eigenprojectors") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (int d = 2; d <= 5; ++d) {
        const double alpha = angle(rng);
        // Same projectors as U(alpha), distinguished one moved from label 0 to label 1.
        const DenseOperator u = settingUnitary(d, alpha);
        Eigen::VectorXcd diag = Eigen::VectorXcd::Constant(d, cplx(-1.0 / d, 0));
        diag(1) = cplx((d - 1.0) / d, 0);
        const DenseOperator expected = u * diag.asDiagonal() * u.adjoint();
        CHECK(maxAbs(realObservable(d, alpha + 2 * kPi / d) - expected) < 1e-13);
    }
}

TEST_CASE("GHZ states") {
    const DenseState bell = ghzState(2, 2, false);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(bell.amplitudes(0) - r) < 1e-15);
    CHECK(std::abs(bell.amplitudes(1)) == 0.0);
    CHECK(std::abs(bell.amplitudes(2)) == 0.0);
    CHECK(std::abs(bell.amplitudes(3) - r) < 1e-15);

    const DenseState biased = ghzState(3, 3, true);
    for (Eigen::Index i = 0; i < biased.amplitudes.size(); ++i) {
        const bool expectedNonzero = i == 13 || i == 26;  // |111>, |222>
        CHECK((std::abs(biased.amplitudes(i)) > 0) == expectedNonzero);
        if (expectedNonzero) CHECK(std::abs(biased.amplitudes(i) - r) < 1e-15);
    }
    CHECK(std::abs(ghzState(4, 5, false).amplitudes.norm() - 1.0) < 1e-12);
    CHECK_THROWS_AS(ghzState(2, 2, true), InvalidScenario);
}

TEST_CASE("axis-wise application matches the explicit Kronecker product") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (int d = 2; d <= 3; ++d)
        for (int n = 2; n <= 3; ++n) {
            const DenseState st = ghzState(n, d, false);
            std::vector<DenseOperator> ops;
            std::vector<double> angles;
            for (int p = 0; p < n; ++p) {
                angles.push_back(angle(rng));
                ops.push_back(realObservable(d, angles.back()));
            }
            const cplx viaKron = st.amplitudes.dot(kron(ops) * st.amplitudes);
            CHECK(std::abs(viaKron.real() - expectationReal(st, angles)) < 1e-13);
        }
}

TEST_CASE("real expectation values") {
    // Kronecker route gives the expected values independently.
    const DenseState s22 = ghzState(2, 2, false);
    const double zeros[] = {0.0, 0.0};
    CHECK(expectationReal(s22, zeros) == doctest::Approx(0.25).epsilon(1e-12));
    const double halfPi[] = {kPi / 2, kPi / 2};
    CHECK(expectationReal(s22, halfPi) == doctest::Approx(-0.25).epsilon(1e-12));
    CHECK(expectationReal(ghzState(2, 3, false), zeros) == doctest::Approx(2.0 / 9.0).epsilon(1e-12));

    const double three[] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS((void)expectationReal(s22, three), ShapeMismatch);
}

TEST_CASE("complex expectation values") {
    const double zeros[] = {0.0, 0.0};
    CHECK(std::abs(expectationComplex(ghzState(2, 2, false), zeros) - cplx(1, 0)) < 1e-12);

    const double angles[] = {kPi / 3, 0.0};
    const cplx expected = (2.0 * std::polar(1.0, -kPi / 3) + std::polar(1.0, 2 * kPi / 3)) / 3.0;
    CHECK(std::abs(expectationComplex(ghzState(2, 3, false), angles) - expected) < 1e-12);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    const DenseState b4 = ghzState(3, 4, true);
    for (int i = 0; i < 20; ++i) {
        const double a[] = {angle(rng), angle(rng), angle(rng)};
        CHECK(std::abs(std::abs(expectationComplex(b4, a)) - 2.0 / 3.0) < 1e-12);
    }
}

TEST_CASE("joint outcome distribution") {
    const double zeros[] = {0.0, 0.0};
    const auto p = jointOutcomeDistribution(ghzState(2, 2, false), zeros);
    REQUIRE(p.size() == 4);
    CHECK(p[0] == doctest::Approx(0.5));
    CHECK(std::abs(p[1]) < 1e-15);
    CHECK(std::abs(p[2]) < 1e-15);
    CHECK(p[3] == doctest::Approx(0.5));

    // d = 3, N = 2: depends on (a1, a2) only through a1 + a2 mod 3 and on the
    // angles only through their sum.
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    const DenseState s = ghzState(2, 3, false);
    for (int trial = 0; trial < 100; ++trial) {
        const double a1 = angle(rng), a2 = angle(rng), split = angle(rng);
        const double first[] = {a1, a2};
        const double second[] = {split, a1 + a2 - split};
        const auto pa = jointOutcomeDistribution(s, first);
        const auto pb = jointOutcomeDistribution(s, second);
        double total = 0.0;
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 3; ++y) {
                const std::size_t idx = static_cast<std::size_t>(x * 3 + y);
                const std::size_t rep = static_cast<std::size_t>((x + y) % 3);  // (0, s) has the same class
                CHECK(std::abs(pa[idx] - pa[rep]) < 1e-12);
                CHECK(std::abs(pa[idx] - pb[idx]) < 1e-12);
                CHECK(pa[idx] >= -1e-15);
                total += pa[idx];
            }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("unbiased marginals are uniform") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(0, 2 * kPi);
    for (int d = 2; d <= 4; ++d) {
        const DenseState s = ghzState(3, d, false);
        const double a[] = {angle(rng), angle(rng), angle(rng)};
        const auto p = jointOutcomeDistribution(s, a);
        for (int party = 0; party < 3; ++party) {
            std::vector<double> marginal(static_cast<std::size_t>(d), 0.0);
            for (std::size_t idx = 0; idx < p.size(); ++idx) {
                std::size_t rest = idx;
                for (int q = 2; q > party; --q) rest /= static_cast<std::size_t>(d);
                marginal[rest % static_cast<std::size_t>(d)] += p[idx];
            }
            for (double m : marginal) CHECK(std::abs(m - 1.0 / d) < 1e-12);
        }
    }
}
