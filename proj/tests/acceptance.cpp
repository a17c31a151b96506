#include <iostream>

#include "thermwit/checks.hpp"

// One line per acceptance criterion; exit status is nonzero if any fail.
int main() {
    const auto results = thermwit::checks::run_acceptance();
    return thermwit::checks::print_report(std::cout, results) ? 0 : 1;
}
