#pragma once

#include <string>
#include <vector>

namespace npa {

struct CriterionResult {
    int index;
    std::string name;
    bool pass;
    std::string detail;
};

// Runs the full verification suite (the same checks the `verify-all` CLI
// subcommand reports) and returns one result per criterion.
std::vector<CriterionResult> run_acceptance_suite();

}  // namespace npa
