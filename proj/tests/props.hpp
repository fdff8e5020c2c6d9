#pragma once

// Randomized property suites shared by the unit tests and the acceptance run.
// Each returns the number of failing cases; `cases` is how many were run.

#include <cstdint>
#include <string>
#include <vector>

namespace props {

struct Outcome {
    int cases = 0;
    int failures = 0;
    std::vector<std::string> first_failures;  // up to a few descriptions
    void fail(const std::string& why) {
        ++failures;
        if (first_failures.size() < 5) first_failures.push_back(why);
    }
};

Outcome field_axioms(int cases, std::uint64_t seed = 11);
Outcome gcd_divisibility(int cases, std::uint64_t seed = 12);
Outcome charpoly_vs_cofactor(int cases, std::uint64_t seed = 13);
Outcome lift_round_trip(int cases, std::uint64_t seed = 14);
Outcome family_reciprocity();

} // namespace props
