#include "geobell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "geobell/errors.hpp"
#include "geobell/kernels.hpp"
#include "geobell/oracle.hpp"
#include "geobell/parallel.hpp"

namespace geobell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kMaxTensorDoubles = std::size_t{1} << 28;

double reduceAngle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    return r;
}

}  // namespace

double SettingsGrid::offsetSum() const {
    double s = 0.0;
    for (double o : offsets) s += o;
    return s;
}

double SettingsGrid::aggregateAngle(int sumIndex) const { return offsetSum() + step * sumIndex; }

double evenPartyOffset(const Scenario& s) {
    if (s.n % 2 != 0) return 0.0;
    switch (s.offset) {
        case OffsetConvention::HalfGridStep: return std::numbers::pi / s.gridSize();
        case OffsetConvention::LiteralPaper: return 1.0 / (2.0 * s.d);
        case OffsetConvention::None: return 0.0;
    }
    return 0.0;
}

SettingsGrid buildGrid(const Scenario& s) {
    validate(s);
    if (!s.finite()) throw InvalidScenario("buildGrid requires a finite number of bases");
    SettingsGrid g;
    g.n = s.n;
    g.d = s.d;
    g.bases = *s.bases;
    const int m = g.size();
    g.step = kTwoPi / m;
    g.offsets.assign(static_cast<std::size_t>(s.n), 0.0);
    g.offsets[0] = evenPartyOffset(s);
    g.angles.resize(static_cast<std::size_t>(s.n));
    for (int p = 0; p < s.n; ++p) {
        auto& list = g.angles[static_cast<std::size_t>(p)];
        list.resize(static_cast<std::size_t>(m));
        for (int t = 0; t < m; ++t) list[static_cast<std::size_t>(t)] = reduceAngle(g.offsets[p] + g.step * t);
    }
    return g;
}

EntryKind entryKind(Strategy strategy) {
    switch (strategy) {
        case Strategy::RealScalar:
        case Strategy::DichotomicModD: return EntryKind::Real;
        case Strategy::ComplexRoot: return EntryKind::Complex;
        case Strategy::VectorModD: return EntryKind::Vector;
    }
    return EntryKind::Real;
}

int componentCount(EntryKind kind, int d) {
    switch (kind) {
        case EntryKind::Real: return 1;
        case EntryKind::Complex: return 2;
        case EntryKind::Vector: return d - 1;
    }
    return 1;
}

CorrelationTensor::CorrelationTensor(Scenario scenario, EntryKind kind)
    : scenario_(std::move(scenario)), kind_(kind), components_(componentCount(kind, scenario_.d)),
      gridSize_(scenario_.gridSize()), entries_(1) {
    for (int p = 0; p < scenario_.n; ++p) {
        entries_ *= static_cast<std::size_t>(gridSize_);
        if (entries_ * static_cast<std::size_t>(components_) > kMaxTensorDoubles)
            throw Infeasible("correlation tensor too large to materialize");
    }
    data_.assign(entries_ * static_cast<std::size_t>(components_), 0.0);
}

std::span<double> CorrelationTensor::entry(std::size_t flat) {
    return std::span<double>(data_).subspan(flat * static_cast<std::size_t>(components_),
                                            static_cast<std::size_t>(components_));
}

std::span<const double> CorrelationTensor::entry(std::size_t flat) const {
    return std::span<const double>(data_).subspan(flat * static_cast<std::size_t>(components_),
                                                  static_cast<std::size_t>(components_));
}

cplx CorrelationTensor::complexEntry(std::size_t flat) const {
    const auto e = entry(flat);
    return kind_ == EntryKind::Complex ? cplx(e[0], e[1]) : cplx(e[0], 0.0);
}

std::size_t CorrelationTensor::flatIndex(std::span<const int> tuple) const {
    if (static_cast<int>(tuple.size()) != scenario_.n) throw ShapeMismatch("index tuple has wrong length");
    std::size_t flat = 0;
    for (int t : tuple) {
        if (t < 0 || t >= gridSize_) throw IndexError("grid index out of range");
        flat = flat * static_cast<std::size_t>(gridSize_) + static_cast<std::size_t>(t);
    }
    return flat;
}

std::vector<int> CorrelationTensor::tuple(std::size_t flat) const {
    std::vector<int> out(static_cast<std::size_t>(scenario_.n));
    for (int p = scenario_.n - 1; p >= 0; --p) {
        out[static_cast<std::size_t>(p)] = static_cast<int>(flat % static_cast<std::size_t>(gridSize_));
        flat /= static_cast<std::size_t>(gridSize_);
    }
    return out;
}

int CorrelationTensor::sumIndex(std::size_t flat) const {
    int sum = 0;
    for (int p = 0; p < scenario_.n; ++p) {
        sum += static_cast<int>(flat % static_cast<std::size_t>(gridSize_));
        flat /= static_cast<std::size_t>(gridSize_);
    }
    return sum % gridSize_;
}

std::vector<double> quantumEntry(const Scenario& s, double alphaPrime) {
    switch (s.strategy) {
        case Strategy::RealScalar:
        case Strategy::DichotomicModD: return {kernels::realKernel(s, alphaPrime)};
        case Strategy::ComplexRoot: {
            const cplx e = kernels::complexKernel(s, alphaPrime);
            return {e.real(), e.imag()};
        }
        case Strategy::VectorModD: return kernels::kernelVector(s.d, s.n, s.biased(), alphaPrime);
    }
    return {};
}

std::vector<double> quantumProfile(const Scenario& s) {
    const SettingsGrid grid = buildGrid(s);
    const int comps = componentCount(entryKind(s.strategy), s.d);
    std::vector<double> profile;
    profile.reserve(static_cast<std::size_t>(grid.size() * comps));
    for (int t = 0; t < grid.size(); ++t) {
        const std::vector<double> e = quantumEntry(s, grid.aggregateAngle(t));
        profile.insert(profile.end(), e.begin(), e.end());
    }
    return profile;
}

namespace {

std::vector<double> oracleEntry(const Scenario& s, const oracle::DenseState& state, std::span<const double> angles) {
    switch (s.strategy) {
        case Strategy::RealScalar: return {oracle::expectationReal(state, angles)};
        case Strategy::ComplexRoot: {
            const cplx e = oracle::expectationComplex(state, angles);
            return {e.real(), e.imag()};
        }
        case Strategy::DichotomicModD: {
            const std::vector<double> classes = oracle::sumClassDistribution(state, angles);
            double e = 0.0;
            for (int c = 0; c < s.d; ++c) e += dichotomicValue(s.d, c) * classes[static_cast<std::size_t>(c)];
            return {e};
        }
        case Strategy::VectorModD: {
            const std::vector<double> classes = oracle::sumClassDistribution(state, angles);
            std::vector<double> e(static_cast<std::size_t>(s.d - 1), 0.0);
            for (int c = 0; c < s.d; ++c) {
                const OutcomeVector v = vectorOutcome(s.d, c);
                for (std::size_t k = 0; k < v.size(); ++k) e[k] += classes[static_cast<std::size_t>(c)] * v[k];
            }
            return e;
        }
    }
    return {};
}

}  // namespace

CorrelationTensor quantumTensor(const Scenario& s, EvaluationPath path) {
    const SettingsGrid grid = buildGrid(s);
    CorrelationTensor tensor(s, entryKind(s.strategy));
    const int comps = tensor.components();
    if (path == EvaluationPath::Kernel) {
        const std::vector<double> profile = quantumProfile(s);
        parallelFor(tensor.entryCount(), [&](std::size_t flat) {
            const auto src = std::span<const double>(profile).subspan(
                static_cast<std::size_t>(tensor.sumIndex(flat) * comps), static_cast<std::size_t>(comps));
            std::ranges::copy(src, tensor.entry(flat).begin());
        });
        return tensor;
    }
    const oracle::DenseState state = oracle::ghzState(s.n, s.d, s.biased());
    parallelFor(tensor.entryCount(), [&](std::size_t flat) {
        const std::vector<int> idx = tensor.tuple(flat);
        std::vector<double> angles(idx.size());
        for (std::size_t p = 0; p < idx.size(); ++p)
            angles[p] = grid.angles[p][static_cast<std::size_t>(idx[p])];
        const std::vector<double> e = oracleEntry(s, state, angles);
        std::ranges::copy(e, tensor.entry(flat).begin());
    });
    return tensor;
}

namespace {

void requireSameShape(const CorrelationTensor& a, const CorrelationTensor& b) {
    if (a.kind() != b.kind() || a.entryCount() != b.entryCount() || a.components() != b.components() ||
        a.scenario().n != b.scenario().n || a.gridSize() != b.gridSize())
        throw ShapeMismatch("correlation tensors differ in shape or entry kind");
}

}  // namespace

cplx complexOverlap(const CorrelationTensor& a, const CorrelationTensor& b) {
    requireSameShape(a, b);
    if (a.kind() == EntryKind::Complex) {
        cplx sum{};
        for (std::size_t i = 0; i < a.entryCount(); ++i) sum += a.complexEntry(i) * std::conj(b.complexEntry(i));
        return sum;
    }
    double sum = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) sum += da[i] * db[i];
    return {sum, 0.0};
}

double dotProduct(const CorrelationTensor& a, const CorrelationTensor& b) { return complexOverlap(a, b).real(); }

double quantumNorm(const Scenario& s) {
    const std::vector<double> profile = quantumProfile(s);
    double sum = 0.0;
    for (double v : profile) sum += v * v;
    // Each aggregate index is hit by (dL)^{N-1} tuples.
    return sum * std::pow(static_cast<double>(s.gridSize()), s.n - 1);
}

void dumpTensor(std::ostream& out, const CorrelationTensor& t) {
    const SettingsGrid grid = buildGrid(t.scenario());
    out << std::setprecision(17);
    for (std::size_t flat = 0; flat < t.entryCount(); ++flat) {
        for (int idx : t.tuple(flat)) out << idx << ' ';
        out << grid.aggregateAngle(t.sumIndex(flat));
        for (double v : t.entry(flat)) out << ' ' << v;
        out << '\n';
    }
}

}  // namespace geobell
