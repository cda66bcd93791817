#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "groupdet/theorems.hpp"

namespace groupdet::verify {

struct VerifyOptions {
    std::uint64_t seed = 0;
    int workers = 0;
    std::size_t samples = 100;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::uint64_t checks = 0;
    std::vector<std::string> violations;
    std::vector<theorems::Theorem3Report> scan_reports;  // theorem3 suite only
    bool passed() const;
};

const std::vector<std::string>& suite_names();  // dedekind cor5 alphabeta theorem3 monoid all

// Runs one named property suite (or all of them) and reports violations.
// Reports depend only on the seed, never on the worker count.
std::vector<SuiteReport> run_suites(const std::string& name, const VerifyOptions& opts);

}  // namespace groupdet::verify
