#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qmix {

/// One named verification check: a measured deviation against a threshold.
struct CheckResult {
    std::string name;
    double deviation;
    double threshold;
    bool passed() const { return deviation <= threshold; }
};

/// Verification suites mirroring the library's exactness guarantees. Every
/// suite is deterministic for a fixed seed.
std::vector<CheckResult> verify_condsim(std::uint64_t seed);
std::vector<CheckResult> verify_teleport(std::uint64_t seed);
std::vector<CheckResult> verify_ree(std::uint64_t seed);
std::vector<CheckResult> verify_gaussian(std::uint64_t seed);
std::vector<CheckResult> verify_suite(const std::string& name, std::uint64_t seed);

}  // namespace qmix
