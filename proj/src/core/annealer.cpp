#include "annealer.hpp"

#include <atomic>
#include <cassert>
#include <cmath>
#include <thread>

#include "error.hpp"
#include "rng.hpp"

namespace permqubo {

namespace {

// Randomness stream tags; the per-variable acceptance draws use the
// variable index directly, so tags live past the variable range.
constexpr std::uint64_t kStreamInit = 0x100000001ULL;
constexpr std::uint64_t kStreamChoice = 0x100000002ULL;

// exp(-t) underflows to zero beyond this; the acceptance test can skip the
// draw entirely because u < 0 is impossible.
constexpr double kExpCutoff = 745.0;

// Symmetric coupling table for O(m) flip updates; the packed triangle is
// cache-hostile for column reads.  Shared read-only across runs.
struct DenseCoupling {
    int m = 0;
    std::vector<std::int64_t> diag;
    std::vector<std::int64_t> full;   // m x m, zero diagonal

    explicit DenseCoupling(const QuboModel& q) : m(q.m()) {
        diag.resize(m);
        full.assign(static_cast<std::size_t>(m) * m, 0);
        for (int r = 0; r < m; ++r) {
            diag[r] = q.coeff(r, r);
            for (int c = r + 1; c < m; ++c) {
                const std::int64_t v = q.coeff(r, c);
                if (v == 0) continue;
                full[static_cast<std::size_t>(r) * m + c] = v;
                full[static_cast<std::size_t>(c) * m + r] = v;
            }
        }
    }

    const std::int64_t* row(int j) const {
        return full.data() + static_cast<std::size_t>(j) * m;
    }
};

RunResult run_one(const QuboModel& model, const DenseCoupling& coupling,
                  const AnnealerConfig& cfg, std::uint64_t run_index) {
    const int m = model.m();
    const std::uint64_t seed = cfg.seed;

    std::vector<std::uint8_t> x(m);
    for (int j = 0; j < m; ++j)
        x[j] = static_cast<std::uint8_t>(
            hash_key(seed, run_index, kStreamInit, static_cast<std::uint64_t>(j)) & 1u);

    // Effective fields h[j]; flip delta of j is (1-2x[j])*h[j].
    std::vector<std::int64_t> h(m);
    std::int64_t energy = model.constant();
    for (int j = 0; j < m; ++j) {
        std::int64_t f = coupling.diag[j];
        const std::int64_t* row = coupling.row(j);
        for (int i = 0; i < m; ++i)
            if (x[i]) f += row[i];
        h[j] = f;
        if (x[j]) energy += coupling.diag[j];
    }
    for (int r = 0; r < m; ++r) {
        if (!x[r]) continue;
        const std::int64_t* row = coupling.row(r);
        for (int c = r + 1; c < m; ++c)
            if (x[c]) energy += row[c];
    }

    RunResult result;
    result.best_energy = energy;
    result.best_x = x;
    result.best_iteration = 0;

    double temperature = cfg.initial_temperature;
    double offset = 0.0;
    std::vector<int> marked;
    marked.reserve(64);

    for (std::int64_t iter = 1; iter <= cfg.iterations; ++iter) {
        temperature = std::max(cfg.final_temperature,
                               temperature * (1.0 - cfg.decay));
        const double inv_temp = 1.0 / temperature;
        const double offset_before = offset;

        marked.clear();
        for (int j = 0; j < m; ++j) {
            const std::int64_t delta = (1 - 2 * static_cast<std::int64_t>(x[j])) * h[j];
            const double t = (static_cast<double>(delta) - offset) * inv_temp;
            if (t <= 0.0) {
                marked.push_back(j);
            } else if (t <= kExpCutoff) {
                const double u = u01(seed, run_index, static_cast<std::uint64_t>(iter),
                                     static_cast<std::uint64_t>(j));
                if (u < std::exp(-t)) marked.push_back(j);
            }
        }

        if (!marked.empty()) {
            const std::uint64_t pick =
                hash_key(seed, run_index, static_cast<std::uint64_t>(iter), kStreamChoice);
            const int j = marked[static_cast<std::size_t>(pick % marked.size())];
            const std::int64_t delta = (1 - 2 * static_cast<std::int64_t>(x[j])) * h[j];
            const std::int64_t sign = x[j] ? -1 : 1;
            x[j] ^= 1;
            energy += delta;
            const std::int64_t* row = coupling.row(j);
            for (int i = 0; i < m; ++i) h[i] += sign * row[i];
            h[j] -= sign * row[j];   // row[j] is 0, kept for clarity
            offset = 0.0;
            ++result.accepted_flips;
            if (energy < result.best_energy) {
                result.best_energy = energy;
                result.best_x = x;
                result.best_iteration = iter;
            }
            if (cfg.observer)
                cfg.observer({iter, temperature, offset_before, j, energy, &x});
        } else {
            offset += cfg.offset_increase_rate;
            if (cfg.observer)
                cfg.observer({iter, temperature, offset_before, -1, energy, &x});
        }

#ifndef NDEBUG
        if (iter % 1000 == 0) assert(energy == evaluate(model, x));
#endif
    }

    result.feasible = false;
    if (auto perm = decode(model.layout(), result.best_x)) {
        result.feasible = true;
        result.permutation = std::move(*perm);
        result.cost = result.best_energy;
    }
    return result;
}

} // namespace

void AnnealerConfig::validate() const {
    if (!(initial_temperature >= final_temperature))
        fail(ErrorCode::argument, "need initial_temperature >= final_temperature");
    if (!(final_temperature > 0.0))
        fail(ErrorCode::argument, "final_temperature must be positive");
    if (!(decay > 0.0 && decay < 1.0))
        fail(ErrorCode::argument, "decay must be in (0, 1)");
    if (!(offset_increase_rate >= 0.0))
        fail(ErrorCode::argument, "offset_increase_rate must be >= 0");
    if (iterations < 1) fail(ErrorCode::argument, "iterations must be >= 1");
    if (runs < 1) fail(ErrorCode::argument, "runs must be >= 1");
    if (threads < 1) fail(ErrorCode::argument, "threads must be >= 1");
}

RunResult anneal(const QuboModel& model, const AnnealerConfig& cfg) {
    cfg.validate();
    DenseCoupling coupling(model);
    return run_one(model, coupling, cfg, 0);
}

std::vector<RunResult> anneal_many(const QuboModel& model,
                                   const AnnealerConfig& cfg) {
    cfg.validate();
    DenseCoupling coupling(model);
    std::vector<RunResult> results(cfg.runs);
    const int workers = std::min(cfg.threads, cfg.runs);
    if (workers <= 1 || cfg.observer) {
        // observer callbacks stay single-threaded
        for (int r = 0; r < cfg.runs; ++r)
            results[r] = run_one(model, coupling, cfg, static_cast<std::uint64_t>(r));
        return results;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int r = next.fetch_add(1);
                if (r >= cfg.runs) return;
                results[r] = run_one(model, coupling, cfg,
                                     static_cast<std::uint64_t>(r));
            }
        });
    for (auto& t : pool) t.join();
    return results;
}

} // namespace permqubo
