#pragma once

#include <cstdint>
#include <vector>

#include "qubo.hpp"

namespace permqubo {

// Two ways of reading the coupling sums behind the flip bounds.
//
// incident: every unordered pair contributes to both endpoints, regardless
//           of which triangle stores it.  Storage-invariant; this is the
//           bound that provably covers any single flip.
// rowwise:  sums run over the stored row only, i.e. the formulas applied
//           verbatim to an upper-triangular matrix.  This is how the
//           published weight tables for these benchmarks were produced;
//           values are generally smaller.
enum class BoundConvention { incident, rowwise };

// Per-variable energy change bounds: down[i] bounds the gain from clearing
// bit i, up[i] the gain from setting it.
struct FlipBounds {
    std::vector<std::int64_t> down;
    std::vector<std::int64_t> up;
};

FlipBounds flip_bounds(const QuboModel& model,
                       BoundConvention conv = BoundConvention::incident);

// The five penalty-weight methods.  Every result is clamped to >= 1.
std::int64_t ub(const QuboModel& cost);
std::int64_t mqc(const QuboModel& cost);
std::int64_t vlm(const QuboModel& cost, BoundConvention conv);
// Minimum positive flip bound of the constraint matrix (2 for any one-hot
// permutation constraint).  Errors when no bound is positive.
std::int64_t gamma(const QuboModel& constraint, BoundConvention conv);
std::int64_t momc(const QuboModel& cost, const QuboModel& constraint,
                  BoundConvention conv);
std::int64_t moc(const QuboModel& cost, const QuboModel& constraint,
                 BoundConvention conv);

struct MethodValues {
    std::int64_t ub = 1;
    std::int64_t mqc = 1;
    std::int64_t vlm = 1;
    std::int64_t momc = 1;
    std::int64_t moc = 1;
};

struct PenaltyReport {
    // Values under the published-table (rowwise) convention; these are the
    // weights the benchmark pipeline uses.
    MethodValues table;
    // Values under the storage-invariant incident convention.
    MethodValues invariant;
    std::int64_t gamma = 0;                 // same under both conventions here
    FlipBounds bounds_c, bounds_g;          // rowwise
    FlipBounds bounds_c_incident, bounds_g_incident;
};

PenaltyReport all_weights(const QuboModel& cost, const QuboModel& constraint);

std::string report_to_json(const PenaltyReport& report);
// Aligned one-row-per-method table, both conventions.
std::string report_to_table(const PenaltyReport& report);

} // namespace permqubo
