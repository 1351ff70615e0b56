// Integration gate: runs every built-in acceptance criterion and reports one
// pass/fail line per criterion. Exit status is the number of failures.

#include <iostream>

#include "core/selftest.hpp"

int main() {
    const int failures = nsconic::selftest::run_all_count_failures(std::cout);
    if (failures > 0) std::cout << failures << " criteria failed\n";
    return failures;
}
