// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "selftest.hpp"

#include <algorithm>
#include <iostream>

int main() {
    const auto results = selfsim::selftest::run_all(&std::cout);
    const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
    return failed == 0 ? 0 : 1;
}
