#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace erk::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    double max_dev = 0.0;  // worst deviation seen, in the check's own scale
    double tol = 0.0;      // tolerance it was judged against
    std::string note;      // draw counts / sizes
};

struct ValidationReport {
    std::string level;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

// Cross-checks the closed forms against the independent matrix oracles:
// input/output logdet equivalence, block-split identity, tridiagonal recursion
// vs the closed form, series vs exhaustive finite-block enumeration, the SCP
// expectation oracle, and the Markov reductions. level "quick" keeps blocks
// at N <= 16 (about a second); "full" raises the draw counts to N <= 64 and
// adds a 1e5-trial Monte-Carlo consistency check.
//
// Tolerances default to 1e-9 per matrix row (identities), 1e-10 relative
// (recursion), 1e-12 (algebraic reductions) and 4 sigma (MC). Setting the
// ERK_VALIDATE_TOL environment variable to a positive number replaces all of
// them, which is also the supported way of forcing the failure path.
ValidationReport run_validation(const std::string& level, std::uint64_t seed);

void print_report(const ValidationReport& r, std::ostream& out);

}  // namespace erk::cli
