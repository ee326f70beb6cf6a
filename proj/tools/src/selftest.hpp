#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace selfsim::selftest {

struct CaseResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs criteria 1..15 in order. Each finished case is printed to `progress`
/// (one line, see format_line) when it is non-null.
std::vector<CaseResult> run_all(std::ostream* progress = nullptr);

/// "criterion 04 PASS cauchy-kernels: <detail>"
std::string format_line(const CaseResult& r);

}  // namespace selfsim::selftest
