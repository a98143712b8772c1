// Acceptance battery: one pass/fail line per criterion, exit 1 on any failure.
#include <iostream>

#include "obq/acceptance.hpp"

int main() {
    obq::AcceptanceConfig config;
    const auto results = obq::run_acceptance(config);
    const bool ok = obq::print_acceptance(std::cout, results);
    return ok ? 0 : 1;
}
