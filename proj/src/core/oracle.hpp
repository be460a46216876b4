#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "instances.hpp"
#include "qubo.hpp"

namespace permqubo {

struct BruteForceResult {
    std::vector<std::uint8_t> x;
    std::int64_t energy = 0;
};

// Exhaustive minimum over all 2^m bit vectors (m <= 24); ties break to the
// lexicographically smallest vector.
BruteForceResult brute_force_qubo(const QuboModel& model);

struct PermutationOptimum {
    std::vector<int> permutation;   // QAP: location per facility; TSP: tour
    std::int64_t cost = 0;
};

// Exhaustive minimum over permutations (n <= 9); TSP tours fix city 0 first.
PermutationOptimum brute_force_permutation(const ProblemInstance& inst);

struct ValidityReport {
    std::int64_t alpha = 0;
    std::int64_t feasible_min = 0;
    std::int64_t infeasible_min = 0;
    bool strictly_valid = false;    // infeasible_min > feasible_min
    bool tie_valid = false;         // infeasible_min >= feasible_min
    std::vector<std::uint8_t> witness;   // attains infeasible_min
};

// Enumerates all assignments of C + alpha*G and partitions them by
// feasibility of the one-hot constraints (m <= 24).
ValidityReport check_validity(const QuboModel& cost, const QuboModel& constraint,
                              std::int64_t alpha);

std::string validity_to_json(const ValidityReport& report);

} // namespace permqubo
