#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "annealer.hpp"
#include "instances.hpp"
#include "penalty.hpp"

namespace permqubo {

enum class Method { ub, mqc, vlm, momc, moc };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

// Exact objective of a permutation: for QAP sigma maps facility -> location,
// for TSP sigma is the full tour by position (cyclic).
std::int64_t permutation_cost(const ProblemInstance& inst,
                              const std::vector<int>& sigma);

// Mean percent deviation from the optimum; nullopt for an empty cost list
// (the zero-feasible-runs case).
std::optional<double> arpd(const std::vector<std::int64_t>& costs,
                           std::int64_t optimal);

struct ExperimentConfig {
    struct InstanceSpec {
        std::string name;
        std::string path;            // file to parse (kind from extension/content)
        ProblemKind kind = ProblemKind::tsp;
    };
    std::vector<InstanceSpec> instances;
    std::vector<Method> methods{Method::ub, Method::mqc, Method::vlm,
                                Method::momc, Method::moc};
    std::vector<double> temperature_multipliers{0.1, 1.0, 10.0};
    int runs = 20;
    std::int64_t iterations = 0;     // 0 means m^2
    std::uint64_t base_seed = 42;
    int threads = 1;
    bool include_large = false;      // m > 900 instances need the explicit flag
    std::map<std::string, std::int64_t> known_optima;

    // Weight convention used for the per-method alpha and for beta = VLM.
    BoundConvention convention = BoundConvention::rowwise;
};

ExperimentConfig config_from_json(std::string_view text);

struct CellResult {
    std::string instance;
    Method method = Method::ub;
    double multiplier = 1.0;
    std::int64_t alpha = 1;
    int runs = 0;
    int feasible_count = 0;
    std::optional<double> arpd;
    std::vector<std::int64_t> costs;     // feasible runs only, run order
    std::int64_t min_cost = 0, max_cost = 0;
    double mean_cost = 0.0;
    double wall_ms = 0.0;
};

struct BenchReport {
    std::vector<CellResult> cells;
};

BenchReport run_experiment(const ExperimentConfig& cfg);

// One row per cell: instance, method, multiplier, feasible count, ARPD,
// min/mean/max cost.  Deterministic for a fixed base seed (no timing column).
std::string report_to_csv(const BenchReport& report);
std::string report_to_json(const BenchReport& report);
std::string report_to_text(const BenchReport& report);

// The desk-scale limit separating default instances from --large ones.
constexpr int kLargeVariableThreshold = 900;

} // namespace permqubo
