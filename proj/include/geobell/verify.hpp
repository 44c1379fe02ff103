#pragma once

// Self-check suite: closed-form kernels against the dense oracle, strategy
// equivalence, and optimizer cross-validation.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace geobell::verify {

struct VerifyOptions {
    bool quick = false;             // d <= 3, N <= 3, fewer samples
    std::uint64_t seed = 20240607;
    /// Multiplies the real unbiased kernel before comparison; anything other
    /// than 1 must make the oracle check fail (mutation testing).
    double realKernelScale = 1.0;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

std::vector<CheckResult> runVerification(const VerifyOptions& options = {});

/// One "PASS name: detail" / "FAIL name: detail" line per check; returns true iff all pass.
bool printResults(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace geobell::verify
