#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace thermwit::checks {

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20071001;
    /// 1 + R(|S(n,k)>). Overridable so a harness can inject a faulty formula
    /// and confirm the suite catches it.
    std::function<double(std::uint64_t n, std::uint64_t k)> dicke_one_plus_r;
};

/// The numbered acceptance criteria, one result per criterion.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opts = {});

/// Module-level invariants (property suites).
std::vector<CheckResult> run_properties(const VerifyOptions& opts = {});

/// Fixed-width pass/fail table; returns true when every row passed.
bool print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace thermwit::checks
