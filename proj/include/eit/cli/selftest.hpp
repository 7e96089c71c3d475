#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eit::cli {

struct CheckResult {
    std::string name;
    std::string tolerance;
    double value;
    bool pass;
};

// The fast invariant subset. corrupt names one check whose reference constant
// is perturbed, so the failure path can be exercised.
std::vector<CheckResult> selftest(const std::string& corrupt = "");

// Prints the table; returns true when every check passed.
bool print_selftest(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace eit::cli
