// Verification gate: runs every acceptance criterion at its pinned
// tolerance and prints one pass/fail line per criterion. Exits nonzero if
// any criterion fails.
#include "core/verification.hpp"

#include <cstdio>

int main() {
    const std::vector<npa::CriterionResult> results = npa::run_acceptance_suite();
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s %d. %s\n", r.pass ? "[PASS]" : "[FAIL]", r.index, r.name.c_str());
        std::printf("       %s\n", r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
