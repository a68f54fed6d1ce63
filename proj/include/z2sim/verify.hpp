#pragma once

#include <string>
#include <vector>

#include "z2sim/io.hpp"

namespace z2sim {

enum class CheckStatus { Pass, Fail, Skipped };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_ok() const;  // skips allowed, failures not
    std::string to_json() const;
};

// Named self-checks for one configuration: the operator pipeline against
// the closed matter-eliminated form, the step-commutator audit, compiled
// circuits against exact exponentials, frame spectra, and sector counting.
// Checks whose dense verification would exceed the register caps report
// "skipped" rather than failing.
VerifyReport run_verification(const RunConfig& cfg);

}  // namespace z2sim
