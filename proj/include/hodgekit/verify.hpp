#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hodgekit/green.hpp"
#include "hodgekit/hodge.hpp"
#include "hodgekit/operators.hpp"

namespace hodgekit {

/// One verified property: a stable name, the statement it checks, the worst
/// residual measured, and the limit it had to stay under.
struct PropertyCheck {
    std::string name;
    std::string statement;
    double worst = 0.0;
    double limit = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<PropertyCheck> checks;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Run every property the library promises, on one complex under one scheme,
/// with `samples` random cochains per sampled property drawn from the seeded
/// generator. Deterministic for identical arguments.
VerifyReport run_property_suite(const OperatorSet& ops, int samples, std::uint64_t seed);

/// {"checks": [{"name", "statement", "worst", "limit", "passed"}...],
///  "all_passed": bool}
std::string verify_report_to_json(const VerifyReport& report);

/// Plain-text table, one line per property.
std::string verify_report_to_text(const VerifyReport& report);

} // namespace hodgekit
