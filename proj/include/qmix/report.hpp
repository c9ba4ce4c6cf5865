#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmix/bounds.hpp"

namespace qmix {

/// Fixed-width float formatting used for every emitted number (12
/// significant digits, C locale) so identical runs produce identical bytes.
std::string format_number(double x);

/// JSON report mirroring the CapacityReport fields verbatim, plus a metadata
/// object carrying the RNG seed.
std::string report_to_json(const CapacityReport& report, std::uint64_t seed);

/// One sweep row: up to two swept parameters plus the report they produced.
struct SweepRow {
    std::string param1;
    std::string param2;  // empty for 1-parameter sweeps
    CapacityReport report;
};

/// CSV with the fixed header param1,param2,lower,upper,exact,method.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace qmix
