#pragma once

#include <string>
#include <vector>

namespace higgsteich {

struct CheckResult {
    int criterion = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Exact-arithmetic checks (criteria 1-7).  The seed drives the randomized
/// residue and characteristic-polynomial draws.
std::vector<CheckResult> run_algebra_checks(unsigned long long seed);

/// Numerical PDE / geometry checks (criteria 8-11).
std::vector<CheckResult> run_metric_checks();

std::vector<CheckResult> run_all_checks(unsigned long long seed);

} // namespace higgsteich
