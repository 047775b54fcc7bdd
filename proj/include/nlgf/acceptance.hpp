#pragma once

#include <string>
#include <vector>

namespace nlgf {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail; // measured / expected / tolerance
    double seconds = 0.0;
};

/// Runs one acceptance suite: field, cl, poly, games, quant, or all.
/// Deterministic for a fixed seed.
std::vector<CriterionResult> run_suite(const std::string& suite, uint64_t seed);

} // namespace nlgf
