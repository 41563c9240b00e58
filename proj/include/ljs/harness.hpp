#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ljs/syntax.hpp"

namespace ljs {

// A .js source paired with a .expected stdout file. The first line of the
// source may carry a directive comment:
//   // outcome: value | uncaught_error | certified | rejected
// value is assumed when absent. certified/rejected fixtures run through
// check_subset; rejected ones compare the report's first line instead of
// program output.
struct Fixture {
    std::string name;
    std::string source_path;
    std::string expected_path;
    std::string outcome_tag;  // "value", "uncaught_error", "certified", "rejected"
};

struct FixtureResult {
    Fixture fixture;
    bool passed = false;
    std::string detail;  // unified-style diff or failure description
};

struct FormCounts {
    // Mirrors the coverage table: counts per syntactic form across a corpus.
    uint64_t with_blocks = 0;
    uint64_t var_stmts = 0;
    uint64_t try_blocks = 0;
    uint64_t functions = 0;
    uint64_t if_and_switch = 0;
    uint64_t typeof_and_instanceof = 0;
    uint64_t new_exprs = 0;
};

struct HarnessReport {
    std::vector<FixtureResult> results;
    FormCounts counts;
    int failures = 0;
};

// Scans dir (recursively) for .js fixtures; missing .expected is an error.
std::vector<Fixture> discover_fixtures(const std::string& dir);

struct RunConfig {
    uint64_t fuel = 10'000'000;
    bool include_preamble = true;
    bool check_well_formed = false;
};

FixtureResult run_fixture(const Fixture& f, const RunConfig& config);
HarnessReport run_fixture_dir(const std::string& dir, const RunConfig& config);

std::string format_report(const HarnessReport& report);

}  // namespace ljs
