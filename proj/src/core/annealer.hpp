#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qubo.hpp"

namespace permqubo {

// Per-iteration probe for tests and verbose tracing.  accepted_flip is the
// flipped variable or -1 when the iteration only raised the offset.  state
// points at the live bit vector and is only valid during the callback.
struct IterationStats {
    std::int64_t iteration;
    double temperature;
    double offset_before;
    int accepted_flip;
    std::int64_t energy_after;
    const std::vector<std::uint8_t>* state;
};

struct AnnealerConfig {
    double initial_temperature = 1000.0;
    double final_temperature = 1.0;
    double decay = 0.001;                  // per-iteration factor 1 - decay
    double offset_increase_rate = 0.0;
    std::int64_t iterations = 1000;
    std::uint64_t seed = 42;
    int runs = 1;
    int threads = 1;
    std::function<void(const IterationStats&)> observer;   // debug hook

    void validate() const;
};

struct RunResult {
    std::int64_t best_energy = 0;
    std::vector<std::uint8_t> best_x;
    std::int64_t best_iteration = 0;
    bool feasible = false;
    std::optional<std::vector<int>> permutation;
    std::optional<std::int64_t> cost;      // equals best_energy when feasible
    std::int64_t accepted_flips = 0;
};

// One annealing run (run index 0 of the seed's family).
RunResult anneal(const QuboModel& model, const AnnealerConfig& cfg);

// cfg.runs independent runs; run r draws its randomness from (seed, r), so
// results are order-stable and thread-count independent.
std::vector<RunResult> anneal_many(const QuboModel& model,
                                   const AnnealerConfig& cfg);

} // namespace permqubo
