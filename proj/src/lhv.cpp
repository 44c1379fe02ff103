#include "geobell/lhv.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>

#include "geobell/errors.hpp"
#include "geobell/parallel.hpp"

namespace geobell {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxSweeps = 10000;

int mod(int a, int m) {
    const int r = a % m;
    return r < 0 ? r + m : r;
}

double tieTolerance(double reference) { return 1e-10 * std::max(1.0, std::abs(reference)); }

struct Candidate {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<int> offsets;
    bool valid() const { return !offsets.empty(); }
};

// Larger value wins; values within tolerance fall back to lexicographic order.
bool better(double value, const std::vector<int>& offsets, const Candidate& best) {
    if (!best.valid()) return true;
    const double tol = tieTolerance(best.value);
    if (value > best.value + tol) return true;
    return value >= best.value - tol && offsets < best.offsets;
}

void offer(Candidate& best, double value, const std::vector<int>& offsets) {
    if (better(value, offsets, best)) {
        best.value = value;
        best.offsets = offsets;
    }
}

// One term of the overlap: sum over tuples of weight[T] * prod_i character[a_i(t_i)],
// with T the sum of grid indices mod dL.
struct Channel {
    std::vector<cplx> weight;
    std::vector<cplx> character;
};

using Signal = std::vector<cplx>;

// The overlap E_QM . conj(E_LR) of any model, reduced to cyclic convolutions
// of per-observer signals over the dL grid indices.
class OverlapModel {
public:
    OverlapModel(const Scenario& s, ComplexOverlap mode)
        : n_(s.n), d_(s.d), bases_(*s.bases), m_(s.gridSize()),
          modulus_(s.strategy == Strategy::ComplexRoot && mode == ComplexOverlap::Modulus) {
        const std::vector<double> profile = quantumProfile(s);
        const int comps = componentCount(entryKind(s.strategy), d_);
        auto row = [&](int t) { return std::span<const double>(profile).subspan(static_cast<std::size_t>(t * comps), static_cast<std::size_t>(comps)); };
        switch (s.strategy) {
            case Strategy::RealScalar: {
                Channel c;
                for (int t = 0; t < m_; ++t) c.weight.emplace_back(row(t)[0], 0.0);
                for (double v : realOutcomeValues(d_)) c.character.emplace_back(v, 0.0);
                channels_.push_back(std::move(c));
                break;
            }
            case Strategy::ComplexRoot: {
                Channel c;
                for (int t = 0; t < m_; ++t) c.weight.emplace_back(row(t)[0], row(t)[1]);
                for (int a = 0; a < d_; ++a) c.character.push_back(std::conj(complexOutcomeValue(d_, a)));
                channels_.push_back(std::move(c));
                break;
            }
            case Strategy::VectorModD:
            case Strategy::DichotomicModD: {
                // w(T, S) = E(T) . phi(S), expanded in characters of Z_d.
                std::vector<std::vector<double>> phi;
                for (int sc = 0; sc < d_; ++sc)
                    phi.push_back(s.strategy == Strategy::VectorModD ? vectorOutcome(d_, sc)
                                                                      : std::vector<double>{dichotomicValue(d_, sc)});
                for (int q = 0; q < d_; ++q) {
                    Channel c;
                    double magnitude = 0.0;
                    for (int t = 0; t < m_; ++t) {
                        cplx w{};
                        for (int sc = 0; sc < d_; ++sc) {
                            double dot = 0.0;
                            for (int k = 0; k < comps; ++k) dot += row(t)[static_cast<std::size_t>(k)] * phi[static_cast<std::size_t>(sc)][static_cast<std::size_t>(k)];
                            w += dot * std::conj(complexOutcomeValue(d_, (q * sc) % d_));
                        }
                        w /= static_cast<double>(d_);
                        magnitude = std::max(magnitude, std::abs(w));
                        c.weight.push_back(w);
                    }
                    if (magnitude < 1e-15) continue;
                    for (int a = 0; a < d_; ++a) c.character.push_back(complexOutcomeValue(d_, (q * a) % d_));
                    channels_.push_back(std::move(c));
                }
                break;
            }
        }
    }

    int bases() const { return bases_; }
    int d() const { return d_; }
    int n() const { return n_; }
    std::size_t channelCount() const { return channels_.size(); }
    bool modulus() const { return modulus_; }

    double score(cplx overlap) const { return modulus_ ? std::abs(overlap) : overlap.real(); }

    Signal signal(std::span<const int> partyOffsets, std::size_t channel) const {
        Signal g(static_cast<std::size_t>(m_));
        const auto& ch = channels_[channel].character;
        for (int t = 0; t < m_; ++t) {
            const int a = mod(partyOffsets[static_cast<std::size_t>(t % bases_)] - t / bases_, d_);
            g[static_cast<std::size_t>(t)] = ch[static_cast<std::size_t>(a)];
        }
        return g;
    }

    Signal convolve(const Signal& a, const Signal& b) const {
        Signal out(static_cast<std::size_t>(m_));
        for (int t = 0; t < m_; ++t) {
            if (a[static_cast<std::size_t>(t)] == cplx{}) continue;
            for (int u = 0; u < m_; ++u) out[static_cast<std::size_t>((t + u) % m_)] += a[static_cast<std::size_t>(t)] * b[static_cast<std::size_t>(u)];
        }
        return out;
    }

    std::span<const int> partyOffsets(const LhvModel& model, int party) const {
        return std::span<const int>(model.offsets).subspan(static_cast<std::size_t>(party * bases_), static_cast<std::size_t>(bases_));
    }

    cplx overlap(const LhvModel& model) const {
        cplx total{};
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            Signal acc = signal(partyOffsets(model, 0), c);
            for (int p = 1; p < n_; ++p) acc = convolve(acc, signal(partyOffsets(model, p), c));
            for (int t = 0; t < m_; ++t) total += channels_[c].weight[static_cast<std::size_t>(t)] * acc[static_cast<std::size_t>(t)];
        }
        return total;
    }

    /// Convolution of every observer except `party`, per channel.
    std::vector<Signal> others(const LhvModel& model, int party) const {
        std::vector<Signal> out;
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            Signal acc;
            for (int p = 0; p < n_; ++p) {
                if (p == party) continue;
                Signal g = signal(partyOffsets(model, p), c);
                acc = acc.empty() ? std::move(g) : convolve(acc, g);
            }
            out.push_back(std::move(acc));
        }
        return out;
    }

    /// score[k * d + x]: overlap contribution of basis k when its offset is x,
    /// given the convolution of the remaining observers.
    std::vector<cplx> basisScores(const std::vector<Signal>& rest) const {
        std::vector<cplx> scores(static_cast<std::size_t>(bases_ * d_));
        for (std::size_t c = 0; c < channels_.size(); ++c) {
            const auto& w = channels_[c].weight;
            const auto& ch = channels_[c].character;
            for (int t = 0; t < m_; ++t) {
                cplx h{};
                for (int u = 0; u < m_; ++u) h += w[static_cast<std::size_t>(u)] * rest[c][static_cast<std::size_t>(mod(u - t, m_))];
                const int k = t % bases_;
                const int j = t / bases_;
                for (int x = 0; x < d_; ++x) scores[static_cast<std::size_t>(k * d_ + x)] += h * ch[static_cast<std::size_t>(mod(x - j, d_))];
            }
        }
        return scores;
    }

private:
    int n_, d_, bases_, m_;
    bool modulus_;
    std::vector<Channel> channels_;
};

void requireFinite(const Scenario& s) {
    validate(s);
    if (!s.finite()) throw InvalidScenario("LHV optimization requires a finite number of bases");
}

ViolationReport makeReport(const Scenario& s, const OverlapModel& om, const LhvModel& model, Optimizer optimizer,
                           int restarts, std::uint64_t seed, ComplexOverlap mode) {
    ViolationReport r;
    r.scenario = s;
    r.quantumNorm = quantumNorm(s);
    r.bestModel = model;
    r.overlap = om.overlap(model);
    r.lhvMax = om.score(r.overlap);
    r.optimizer = optimizer;
    r.restartsUsed = restarts;
    r.seed = seed;
    r.complexOverlap = mode;
    if (r.lhvMax <= 0.0) {
        std::cerr << "warning: non-positive LHV maximum " << r.lhvMax << "; reporting infinite ratio\n";
        r.ratio = std::numeric_limits<double>::infinity();
    } else {
        r.ratio = r.quantumNorm / r.lhvMax;
    }
    return r;
}

LhvModel modelFrom(const Scenario& s, std::vector<int> offsets) {
    LhvModel m;
    m.n = s.n;
    m.d = s.d;
    m.bases = *s.bases;
    m.offsets = std::move(offsets);
    return m;
}

void decode(std::size_t code, int d, std::span<int> out) {
    for (std::size_t k = out.size(); k-- > 0;) {
        out[k] = static_cast<int>(code % static_cast<std::size_t>(d));
        code /= static_cast<std::size_t>(d);
    }
}

}  // namespace

LhvModel LhvModel::zeros(const Scenario& s) {
    validate(s);
    return modelFrom(s, std::vector<int>(static_cast<std::size_t>(s.n * s.bases.value()), 0));
}

int LhvModel::label(int party, int t) const { return mod(offset(party, t % bases) - t / bases, d); }

std::string_view toString(Optimizer o) {
    switch (o) {
        case Optimizer::Exhaustive: return "exhaustive";
        case Optimizer::AlternatingAscent: return "ascent";
        case Optimizer::Packed: return "packed";
    }
    return "?";
}

std::string_view toString(ComplexOverlap c) { return c == ComplexOverlap::Modulus ? "modulus" : "real"; }

Optimizer parseOptimizer(std::string_view text) {
    if (text == "exhaustive") return Optimizer::Exhaustive;
    if (text == "ascent") return Optimizer::AlternatingAscent;
    if (text == "packed") return Optimizer::Packed;
    throw InvalidScenario("unknown optimizer '" + std::string(text) + "'");
}

ComplexOverlap parseComplexOverlap(std::string_view text) {
    if (text == "modulus") return ComplexOverlap::Modulus;
    if (text == "real") return ComplexOverlap::RealPart;
    throw InvalidScenario("unknown complex overlap mode '" + std::string(text) + "'");
}

void to_json(nlohmann::json& j, const LhvModel& m) {
    j = nlohmann::json::array();
    for (int p = 0; p < m.n; ++p) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < m.bases; ++k) row.push_back(m.offset(p, k));
        j.push_back(std::move(row));
    }
}

void to_json(nlohmann::json& j, const ViolationReport& r) {
    j = nlohmann::json{
        {"scenario", r.scenario},
        {"quantum_norm", r.quantumNorm},
        {"lhv_max", r.lhvMax},
        {"ratio", std::isfinite(r.ratio) ? nlohmann::json(r.ratio) : nlohmann::json("inf")},
        {"best_model", r.bestModel},
        {"optimizer", toString(r.optimizer)},
        {"restarts", r.restartsUsed},
        {"seed", r.seed},
        {"complex_overlap", toString(r.complexOverlap)},
        {"overlap", {r.overlap.real(), r.overlap.imag()}},
    };
}

double modelSpaceSize(const Scenario& s) { return std::pow(static_cast<double>(s.d), s.bases.value() * s.n); }

CorrelationTensor lhvTensor(const LhvModel& model, const Scenario& s) {
    requireFinite(s);
    if (model.n != s.n || model.d != s.d || model.bases != *s.bases ||
        model.offsets.size() != static_cast<std::size_t>(s.n * *s.bases))
        throw ShapeMismatch("LHV model shape does not match scenario");
    CorrelationTensor tensor(s, entryKind(s.strategy));
    const std::vector<double> real = realOutcomeValues(s.d);
    parallelFor(tensor.entryCount(), [&](std::size_t flat) {
        const std::vector<int> idx = tensor.tuple(flat);
        double product = 1.0;
        int labelSum = 0;
        for (int p = 0; p < s.n; ++p) {
            const int a = model.label(p, idx[static_cast<std::size_t>(p)]);
            product *= real[static_cast<std::size_t>(a)];
            labelSum += a;
        }
        labelSum %= s.d;
        auto out = tensor.entry(flat);
        switch (s.strategy) {
            case Strategy::RealScalar: out[0] = product; break;
            case Strategy::ComplexRoot: {
                const cplx w = complexOutcomeValue(s.d, labelSum);
                out[0] = w.real();
                out[1] = w.imag();
                break;
            }
            case Strategy::VectorModD: std::ranges::copy(vectorOutcome(s.d, labelSum), out.begin()); break;
            case Strategy::DichotomicModD: out[0] = dichotomicValue(s.d, labelSum); break;
        }
    });
    return tensor;
}

LhvModel packedModel(const Scenario& s) {
    requireFinite(s);
    const SettingsGrid grid = buildGrid(s);
    LhvModel model = LhvModel::zeros(s);
    for (int p = 0; p < s.n; ++p) {
        for (int k = 0; k < grid.bases; ++k) {
            // Position of the j = 0 angle in units of 2 pi / d; label 0 goes to the
            // unique j with u + j in [-1/2, 1/2).
            const double u = (grid.offsets[static_cast<std::size_t>(p)] + grid.step * k) * s.d / kTwoPi;
            const int j = mod(-static_cast<int>(std::floor(u + 0.5 + 1e-9)), s.d);
            model.offset(p, k) = j;
        }
    }
    return model;
}

cplx modelOverlap(const Scenario& s, const LhvModel& model) {
    requireFinite(s);
    return OverlapModel(s, ComplexOverlap::RealPart).overlap(model);
}

double modelScore(const Scenario& s, const LhvModel& model, ComplexOverlap mode) {
    requireFinite(s);
    const OverlapModel om(s, mode);
    return om.score(om.overlap(model));
}

ViolationReport exhaustiveMax(const Scenario& s, const SearchOptions& options) {
    requireFinite(s);
    const double size = modelSpaceSize(s);
    if (size > options.exhaustiveCap)
        throw Infeasible("exhaustive search over " + std::to_string(size) + " models exceeds the cap of " +
                         std::to_string(options.exhaustiveCap) + "; use alternating ascent");
    const OverlapModel om(s, options.complexOverlap);
    const int bases = om.bases();
    const int d = om.d();
    const int n = om.n();
    std::size_t perParty = 1;
    for (int k = 0; k < bases; ++k) perParty *= static_cast<std::size_t>(d);

    std::vector<Candidate> partial(perParty);
    parallelFor(perParty, [&](std::size_t firstCode) {
        Candidate& best = partial[firstCode];
        std::vector<int> offsets(static_cast<std::size_t>(n * bases), 0);
        decode(firstCode, d, std::span<int>(offsets).first(static_cast<std::size_t>(bases)));
        std::vector<Signal> prefix;
        for (std::size_t c = 0; c < om.channelCount(); ++c)
            prefix.push_back(om.signal(std::span<const int>(offsets).first(static_cast<std::size_t>(bases)), c));

        std::vector<int> last(static_cast<std::size_t>(bases));
        auto resolveLast = [&](const std::vector<Signal>& rest) {
            const std::vector<cplx> scores = om.basisScores(rest);
            auto lastSpan = std::span<int>(offsets).subspan(static_cast<std::size_t>((n - 1) * bases));
            if (!om.modulus()) {
                double value = 0.0;
                for (int k = 0; k < bases; ++k) {
                    int arg = 0;
                    double top = scores[static_cast<std::size_t>(k * d)].real();
                    for (int x = 1; x < d; ++x) {
                        const double v = scores[static_cast<std::size_t>(k * d + x)].real();
                        if (v > top + tieTolerance(top)) {
                            top = v;
                            arg = x;
                        }
                    }
                    lastSpan[static_cast<std::size_t>(k)] = arg;
                    value += top;
                }
                offer(best, value, offsets);
                return;
            }
            for (std::size_t code = 0; code < perParty; ++code) {
                decode(code, d, lastSpan);
                cplx total{};
                for (int k = 0; k < bases; ++k)
                    total += scores[static_cast<std::size_t>(k * d + lastSpan[static_cast<std::size_t>(k)])];
                offer(best, std::abs(total), offsets);
            }
        };

        // Depth-first over observers 1..n-2; the last observer is resolved from
        // the convolution of all earlier ones.
        auto recurse = [&](auto&& self, int party, const std::vector<Signal>& acc) -> void {
            if (party == n - 1) {
                resolveLast(acc);
                return;
            }
            auto span = std::span<int>(offsets).subspan(static_cast<std::size_t>(party * bases), static_cast<std::size_t>(bases));
            for (std::size_t code = 0; code < perParty; ++code) {
                decode(code, d, span);
                std::vector<Signal> next;
                next.reserve(acc.size());
                for (std::size_t c = 0; c < om.channelCount(); ++c) next.push_back(om.convolve(acc[c], om.signal(span, c)));
                self(self, party + 1, next);
            }
        };
        recurse(recurse, 1, prefix);
    });

    Candidate best;
    for (const Candidate& c : partial) offer(best, c.value, c.offsets);
    return makeReport(s, om, modelFrom(s, best.offsets), Optimizer::Exhaustive, 0, options.seed,
                      options.complexOverlap);
}

ViolationReport alternatingAscent(const Scenario& s, int restarts, std::uint64_t seed, const SearchOptions& options,
                                  AscentTrace* trace) {
    requireFinite(s);
    if (restarts < 1) throw InvalidScenario("alternating ascent needs at least one restart");
    const OverlapModel om(s, options.complexOverlap);
    const int bases = om.bases();
    const int d = om.d();
    const int n = om.n();

    std::vector<Candidate> results(static_cast<std::size_t>(restarts));
    std::vector<std::vector<double>> traces(trace ? static_cast<std::size_t>(restarts) : 0);
    parallelFor(static_cast<std::size_t>(restarts), [&](std::size_t r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<int> pick(0, d - 1);
        LhvModel model = modelFrom(s, std::vector<int>(static_cast<std::size_t>(n * bases)));
        for (int& c : model.offsets) c = pick(rng);

        double objective = om.score(om.overlap(model));
        std::vector<double>* steps = trace ? &traces[r] : nullptr;
        if (steps) steps->push_back(objective);

        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            bool changed = false;
            for (int p = 0; p < n; ++p) {
                const std::vector<cplx> scores = om.basisScores(om.others(model, p));
                auto at = [&](int k, int x) { return scores[static_cast<std::size_t>(k * d + x)]; };
                auto total = [&] {
                    cplx sum{};
                    for (int k = 0; k < bases; ++k) sum += at(k, model.offset(p, k));
                    return sum;
                };
                // Real objective: exact conditional optimum per basis. Modulus:
                // align with the current phase and repeat until stable.
                for (int inner = 0; inner < kMaxSweeps; ++inner) {
                    const cplx current = total();
                    const cplx phase = om.modulus() && std::abs(current) > 0 ? current / std::abs(current) : cplx(1.0, 0.0);
                    bool moved = false;
                    for (int k = 0; k < bases; ++k) {
                        int arg = model.offset(p, k);
                        double top = (std::conj(phase) * at(k, arg)).real();
                        for (int x = 0; x < d; ++x) {
                            const double v = (std::conj(phase) * at(k, x)).real();
                            if (v > top + tieTolerance(top)) {
                                top = v;
                                arg = x;
                            }
                        }
                        if (arg != model.offset(p, k)) {
                            model.offset(p, k) = arg;
                            moved = true;
                        }
                    }
                    if (!moved) break;
                    changed = true;
                    if (!om.modulus()) break;
                }
                const double next = om.score(total());
                if (next < objective - tieTolerance(objective))
                    throw ConsistencyError("alternating ascent decreased the objective");
                objective = next;
                if (steps) steps->push_back(objective);
            }
            if (!changed) break;
        }
        results[r].value = om.score(om.overlap(model));
        results[r].offsets = model.offsets;
    });

    Candidate best;
    for (const Candidate& c : results) offer(best, c.value, c.offsets);
    if (trace) trace->objective = std::move(traces);
    return makeReport(s, om, modelFrom(s, best.offsets), Optimizer::AlternatingAscent, restarts, seed,
                      options.complexOverlap);
}

ViolationReport violationRatio(const Scenario& s, const SearchOptions& options) {
    requireFinite(s);
    Optimizer method = options.method.value_or(modelSpaceSize(s) <= options.exhaustiveCap ? Optimizer::Exhaustive
                                                                                           : Optimizer::AlternatingAscent);
    switch (method) {
        case Optimizer::Exhaustive: return exhaustiveMax(s, options);
        case Optimizer::AlternatingAscent: return alternatingAscent(s, options.restarts, options.seed, options);
        case Optimizer::Packed: {
            const OverlapModel om(s, options.complexOverlap);
            return makeReport(s, om, packedModel(s), Optimizer::Packed, 0, options.seed, options.complexOverlap);
        }
    }
    throw InvalidScenario("unknown optimizer");
}

}  // namespace geobell
