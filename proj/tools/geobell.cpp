// Command-line front end for the geometric Bell inequality engine.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "geobell/asymptotics.hpp"
#include "geobell/errors.hpp"
#include "geobell/grid.hpp"
#include "geobell/lhv.hpp"
#include "geobell/tables.hpp"
#include "geobell/verify.hpp"

namespace {

using namespace geobell;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct SearchFlags {
    std::string optimizer = "auto";
    int restarts = 64;
    std::uint64_t seed = 0;
    double cap = 1e7;
    std::string complexOverlap = "modulus";

    void attach(CLI::App* cmd) {
        cmd->add_option("--optimizer", optimizer, "auto | exhaustive | ascent | packed")
            ->check(CLI::IsMember({"auto", "exhaustive", "ascent", "packed"}));
        cmd->add_option("--restarts", restarts, "ascent restarts")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "ascent seed");
        cmd->add_option("--cap", cap, "maximum model count for exhaustive search");
        cmd->add_option("--complex-overlap", complexOverlap, "modulus | real")
            ->check(CLI::IsMember({"modulus", "real"}));
    }

    SearchOptions options() const {
        SearchOptions o;
        if (optimizer != "auto") o.method = parseOptimizer(optimizer);
        o.restarts = restarts;
        o.seed = seed;
        o.exhaustiveCap = cap;
        o.complexOverlap = parseComplexOverlap(complexOverlap);
        return o;
    }
};

struct RatioArgs {
    int d = 2;
    int l = 2;
    int n = 2;
    std::string strategy = "real";
    std::string state = "unbiased";
    std::string offset = "half-step";
    std::string dumpTensor;
    SearchFlags search;
};

int cmdRatio(const RatioArgs& a) {
    Scenario s{.n = a.n,
               .d = a.d,
               .bases = a.l,
               .state = parseStateKind(a.state),
               .strategy = parseStrategy(a.strategy),
               .offset = parseOffsetConvention(a.offset)};
    validate(s);
    const ViolationReport report = violationRatio(s, a.search.options());
    std::cout << nlohmann::json(report).dump(2) << '\n';
    if (!a.dumpTensor.empty()) {
        std::ofstream out(a.dumpTensor);
        if (!out) throw Error("cannot open " + a.dumpTensor);
        dumpTensor(out, quantumTensor(s));
    }
    return kExitOk;
}

int cmdTable(const std::string& id, const SearchFlags& search) {
    const tables::TableResult table = tables::computeTable(tables::parseTableId(id), search.options());
    tables::writeTableCsv(std::cout, table);
    return kExitOk;
}

struct LimitArgs {
    std::string formula = "real";
    int d = 2;
    int n = 2;
    std::optional<int> compareL;
    SearchFlags search;
};

int cmdLimit(const LimitArgs& a) {
    nlohmann::json out{{"formula", a.formula}, {"d", a.d}, {"n", a.n}};
    Scenario s{.n = a.n, .d = a.d, .bases = a.compareL};
    double value = 0.0;
    if (a.formula == "real") {
        value = asymptotics::limitRatioRealUnbiased(a.d, a.n);
    } else if (a.formula == "complex") {
        value = asymptotics::limitRatioComplex(a.d, a.n);
        s.strategy = Strategy::ComplexRoot;
    } else if (a.formula == "biased") {
        value = asymptotics::limitRatioBiased(a.d, a.n);
        s.strategy = Strategy::DichotomicModD;
        s.state = StateKind::BiasedGhz;
    } else {
        value = asymptotics::continuousQuantumNorm(a.d, a.n);
    }
    out["value"] = value;
    if (a.compareL) {
        double finite = 0.0;
        if (a.formula == "norm") {
            finite = std::pow(2.0 * std::numbers::pi / s.gridSize(), a.n) * quantumNorm(s);
        } else {
            finite = violationRatio(s, a.search.options()).ratio;
        }
        out["finite_l"] = *a.compareL;
        out["finite_value"] = finite;
        out["relative_gap"] = (finite - value) / value;
    }
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

struct SurfaceArgs {
    int nMin = 2;
    int nMax = 15;
    int dMin = 3;
    int dMax = 20;
};

int cmdSurface(const SurfaceArgs& a) {
    asymptotics::writeSurfaceCsv(std::cout, asymptotics::biasedSurface(a.nMin, a.nMax, a.dMin, a.dMax));
    return kExitOk;
}

int cmdVerify(bool quick, double mutate) {
    verify::VerifyOptions options;
    options.quick = quick;
    options.realKernelScale = mutate;
    return verify::printResults(std::cout, verify::runVerification(options)) ? kExitOk : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric Bell inequalities for GHZ states of N qudits"};
    app.require_subcommand(1);

    RatioArgs ratio;
    auto* ratioCmd = app.add_subcommand("ratio", "violation ratio of one scenario (JSON)");
    ratioCmd->add_option("--d", ratio.d, "subsystem dimension")->required();
    ratioCmd->add_option("--l", ratio.l, "bases per observer")->required();
    ratioCmd->add_option("--n", ratio.n, "number of parties")->required();
    ratioCmd->add_option("--strategy", ratio.strategy, "real | complex | vector | dichotomic")
        ->check(CLI::IsMember({"real", "complex", "vector", "dichotomic"}));
    ratioCmd->add_option("--state", ratio.state, "unbiased | biased")->check(CLI::IsMember({"unbiased", "biased"}));
    ratioCmd->add_option("--offset-convention", ratio.offset, "half-step | literal | none")
        ->check(CLI::IsMember({"half-step", "literal", "none"}));
    ratioCmd->add_option("--dump-tensor", ratio.dumpTensor, "write the quantum tensor as text to this file");
    ratio.search.attach(ratioCmd);

    std::string tableId;
    SearchFlags tableSearch;
    auto* tableCmd = app.add_subcommand("table", "reproduce a reference table (CSV)");
    tableCmd->add_option("--table", tableId, "1 | 2 | 2a | 3 | 4 | 6")->required();
    tableSearch.attach(tableCmd);

    LimitArgs limit;
    auto* limitCmd = app.add_subcommand("limit", "closed-form L -> infinity values (JSON)");
    limitCmd->add_option("--formula", limit.formula, "real | complex | biased | norm")
        ->required()
        ->check(CLI::IsMember({"real", "complex", "biased", "norm"}));
    limitCmd->add_option("--d", limit.d)->required();
    limitCmd->add_option("--n", limit.n)->required();
    limitCmd->add_option("--compare-l", limit.compareL, "also compute the finite-L value");
    limit.search.attach(limitCmd);

    SurfaceArgs surface;
    auto* surfaceCmd = app.add_subcommand("surface", "log of the biased-state limit ratio (CSV)");
    surfaceCmd->add_option("--n-min", surface.nMin);
    surfaceCmd->add_option("--n-max", surface.nMax);
    surfaceCmd->add_option("--d-min", surface.dMin);
    surfaceCmd->add_option("--d-max", surface.dMax);

    bool quick = false;
    double mutate = 1.0;
    auto* verifyCmd = app.add_subcommand("verify", "oracle and optimizer self-checks");
    verifyCmd->add_flag("--quick", quick, "d <= 3, N <= 3");
    verifyCmd->add_option("--mutate-real-kernel", mutate, "scale the real kernel (sensitivity check)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ratioCmd) return cmdRatio(ratio);
        if (*tableCmd) return cmdTable(tableId, tableSearch);
        if (*limitCmd) return cmdLimit(limit);
        if (*surfaceCmd) return cmdSurface(surface);
        if (*verifyCmd) return cmdVerify(quick, mutate);
    } catch (const Infeasible& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
