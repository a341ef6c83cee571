#pragma once

// Fast structural invariants, run by `isabc-sim selftest`.

#include <string>
#include <vector>

namespace isabc {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CheckResult> run_selftest();

}  // namespace isabc
