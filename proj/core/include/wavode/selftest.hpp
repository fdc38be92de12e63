#pragma once

#include <string>
#include <vector>

namespace wavode {

struct SelfTestOptions {
    // Deliberately corrupts the compiled coefficient table inside the
    // oracle-equivalence suite; used to prove the suite can fail.
    bool inject_beta_defect = false;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelfTestReport {
    std::vector<SuiteResult> suites;
    bool passed = false;
    std::string to_json() const;
};

SelfTestReport run_selftest(const SelfTestOptions& options = {});

}  // namespace wavode
