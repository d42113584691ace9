#ifndef SOLSURF_VERIFY_HPP
#define SOLSURF_VERIFY_HPP

#include <string>
#include <vector>

namespace solsurf {

struct CheckResult {
    std::string name;
    double measured = 0;
    double bound = 0;
    bool pass = false;
    std::string note;
};

struct VerifyOptions {
    // Deliberately mis-sign the metric inside the algebra checks; used to
    // demonstrate that the runner reports and fails correctly.
    bool inject_killing_sign = false;
};

// Suites: algebra | zcc | symmetry | frame | geometry | all.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt = {});

// One result per numbered acceptance criterion (C01..C14); the measured value
// and bound shown are those of the binding sub-check.
std::vector<CheckResult> run_acceptance();

std::string format_report(const std::vector<CheckResult>& results);
bool all_passed(const std::vector<CheckResult>& results);

} // namespace solsurf

#endif
