#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "geobell/scenario.hpp"

namespace geobell {

/// Uniform orbit of d*L setting angles per observer. Grid index t encodes
/// basis k = t % L and detector shift j = t / L, i.e. angle = offset + 2 pi (k + j L) / (d L).
struct SettingsGrid {
    int n = 0;
    int d = 0;
    int bases = 0;
    double step = 0.0;
    std::vector<double> offsets;              // one per observer
    std::vector<std::vector<double>> angles;  // reduced to [0, 2 pi)

    int size() const { return d * bases; }
    double offsetSum() const;
    /// Aggregate angle of any index tuple whose indices sum to `sumIndex` (mod d*L).
    double aggregateAngle(int sumIndex) const;
};

/// First-observer offset used for even N (zero for odd N).
double evenPartyOffset(const Scenario& s);

SettingsGrid buildGrid(const Scenario& s);

enum class EntryKind { Real, Complex, Vector };

EntryKind entryKind(Strategy strategy);

/// Doubles stored per entry: 1 (real), 2 (re, im) or d-1 (vector).
int componentCount(EntryKind kind, int d);

/// Correlation values over the (dL)^N settings grid, row-major with the first
/// observer's index most significant.
class CorrelationTensor {
public:
    CorrelationTensor(Scenario scenario, EntryKind kind);

    const Scenario& scenario() const { return scenario_; }
    EntryKind kind() const { return kind_; }
    int components() const { return components_; }
    int gridSize() const { return gridSize_; }
    std::size_t entryCount() const { return entries_; }

    std::span<double> entry(std::size_t flat);
    std::span<const double> entry(std::size_t flat) const;
    cplx complexEntry(std::size_t flat) const;

    std::size_t flatIndex(std::span<const int> tuple) const;
    std::vector<int> tuple(std::size_t flat) const;
    /// Sum of grid indices of the tuple, modulo the grid size.
    int sumIndex(std::size_t flat) const;

    std::span<const double> data() const { return data_; }

private:
    Scenario scenario_;
    EntryKind kind_;
    int components_;
    int gridSize_;
    std::size_t entries_;
    std::vector<double> data_;
};

/// Quantum correlation at one aggregate angle, packed as tensor components.
std::vector<double> quantumEntry(const Scenario& s, double alphaPrime);

/// Quantum correlation sampled at every aggregate grid index T = 0..dL-1
/// (row T holds componentCount values).
std::vector<double> quantumProfile(const Scenario& s);

enum class EvaluationPath { Kernel, Oracle };

/// Kernel path evaluates the closed form at alpha' = sum of angles; the oracle
/// path runs a dense expectation per entry (small scenarios only).
CorrelationTensor quantumTensor(const Scenario& s, EvaluationPath path = EvaluationPath::Kernel);

/// Real: sum a b. Complex: Re sum a conj(b). Vector: sum of Euclidean dots.
/// `b` is the LHV side for complex tensors.
double dotProduct(const CorrelationTensor& a, const CorrelationTensor& b);

/// Complex overlap sum a conj(b) (imaginary part is zero for non-complex kinds).
cplx complexOverlap(const CorrelationTensor& a, const CorrelationTensor& b);

/// dotProduct(quantumTensor, quantumTensor), computed from the aggregate profile.
double quantumNorm(const Scenario& s);

/// Text dump: one line per entry with the index tuple, alpha' and the components.
void dumpTensor(std::ostream& out, const CorrelationTensor& t);

}  // namespace geobell
