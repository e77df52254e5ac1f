// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmu {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;    ///< numerical checks and runtime limit both met
    bool numerics_ok = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;
    std::string detail;
    /// Nonempty when the failure is fully explained by a defect of the criterion itself.
    std::string known_issue;
};

struct AcceptanceOptions {
    std::vector<int> only;  ///< empty: all criteria
    int jobs = 1;
    unsigned seed = 20240611;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {}, std::ostream* progress = nullptr);

/// Failures without a known_issue.
int unexpected_failures(const std::vector<CriterionResult>& results);

/// One line per criterion: PASS/FAIL, id, name, time against limit, detail.
std::string format_result(const CriterionResult& r);

}  // namespace dmu
