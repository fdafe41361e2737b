#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetadist {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
    double budget_seconds;  // 0: no runtime limit
};

inline constexpr int kCriterionCount = 10;

struct AcceptanceOptions {
    unsigned threads = 0;    // 0: hardware concurrency
    std::vector<int> only;   // empty: all criteria
    int tamper = 0;          // perturb the reference constant of this criterion
};

/// "PASS c3 mean-square moment: ... [12.3 s]"
std::string format_result(const CriterionResult& result);

/// Runs the selected criteria in order, printing each line to `log` as it
/// completes. A criterion that throws is reported as a failure.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, std::ostream& log);

}  // namespace zetadist
