#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace polychain {

// One reproduction-suite item: an exact finite-instance or property check
// with a wall-clock budget.  `pass` already accounts for the budget.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // value summary or first failure description
    double seconds = 0.0;
};

// Runs the full reproduction suite.  Randomized items draw from a
// deterministic generator seeded by `seed`, so reports are reproducible;
// items are independent and may run on up to `threads` workers without
// changing the result order.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0, int threads = 1);

} // namespace polychain
