// Acceptance suite: one line per checked item, one summary line per
// criterion.  Instances whose data files are not bundled are reported as
// SKIP with the reason; see data/README.md for how to supply them.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "core/annealer.hpp"
#include "core/bench.hpp"
#include "core/error.hpp"
#include "core/oracle.hpp"
#include "core/penalty.hpp"
#include "core/qubo.hpp"
#include "core/rng.hpp"
#include "test_util.hpp"

using namespace permqubo;

namespace {

int g_failures = 0;

void pass(const std::string& msg) { std::printf("  [PASS] %s\n", msg.c_str()); }
void skip(const std::string& msg) { std::printf("  [SKIP] %s\n", msg.c_str()); }
void fail_line(const std::string& msg) {
    std::printf("  [FAIL] %s\n", msg.c_str());
    ++g_failures;
}
void check(bool ok, const std::string& msg) { ok ? pass(msg) : fail_line(msg); }
void note(const std::string& msg) { std::printf("  [info] %s\n", msg.c_str()); }

struct Fixture {
    const char* name;
    ProblemKind kind;
    int expected_m;
    std::int64_t optimum;
};

// Table-1 instance set with published sizes and optima.
const std::vector<Fixture> kFixtures = {
    {"had12", ProblemKind::qap, 144, 1652},
    {"had14", ProblemKind::qap, 196, 2724},
    {"had16", ProblemKind::qap, 256, 3720},
    {"had18", ProblemKind::qap, 324, 5358},
    {"had20", ProblemKind::qap, 400, 6922},
    {"rou12", ProblemKind::qap, 144, 235528},
    {"rou15", ProblemKind::qap, 225, 354210},
    {"rou20", ProblemKind::qap, 400, 725522},
    {"tai40a", ProblemKind::qap, 1600, 3139370},
    {"tai40b", ProblemKind::qap, 1600, 637250948},
    {"bayg29", ProblemKind::tsp, 784, 1610},
    {"bays29", ProblemKind::tsp, 784, 2020},
    {"berlin52", ProblemKind::tsp, 2601, 7542},
    {"brazil58", ProblemKind::tsp, 3249, 25395},
    {"dantzig42", ProblemKind::tsp, 1681, 699},
    {"fri26", ProblemKind::tsp, 625, 937},
    {"gr17", ProblemKind::tsp, 256, 2085},
    {"gr21", ProblemKind::tsp, 400, 2707},
    {"gr24", ProblemKind::tsp, 529, 1272},
    {"st70", ProblemKind::tsp, 4761, 675},
};

std::string fixture_file(const Fixture& f) {
    return testutil::data_path(std::string(f.name) +
                               (f.kind == ProblemKind::tsp ? ".tsp" : ".dat"));
}

bool fixture_present(const Fixture& f) {
    return testutil::have_file(fixture_file(f));
}

ProblemInstance load(const Fixture& f) {
    std::string text = testutil::read_file(fixture_file(f));
    if (f.kind == ProblemKind::tsp) return parse_tsplib(text);
    return parse_qaplib(text, f.name);
}

QuboModel cost_of(const ProblemInstance& inst) {
    return kind_of(inst) == ProblemKind::tsp
               ? build_tsp_cost(std::get<TspInstance>(inst))
               : build_qap_cost(std::get<QapInstance>(inst));
}

const char* kMissing = "fixture not bundled (TSPLIB/QAPLIB data not "
                       "redistributable from this build environment; see "
                       "data/README.md)";

double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

// ---------------------------------------------------------------------------

void criterion1_penalty_identity() {
    std::printf("criterion 1: penalty identity and ordering\n");
    auto t0 = std::chrono::steady_clock::now();
    int verified = 0, missing = 0;
    for (const auto& f : kFixtures) {
        if (!fixture_present(f)) {
            ++missing;
            skip(std::string(f.name) + ": " + kMissing);
            continue;
        }
        ProblemInstance inst = load(f);
        QuboModel c = cost_of(inst);
        QuboModel g = build_constraint(c.layout());
        PenaltyReport r = all_weights(c, g);
        bool ok = c.m() == f.expected_m && r.gamma == 2;
        for (const MethodValues* v : {&r.table, &r.invariant}) {
            ok = ok && v->momc == std::max<std::int64_t>(1, (v->vlm + 1) / 2);
            ok = ok && v->moc <= v->momc && v->momc <= v->vlm && v->vlm <= v->ub;
            ok = ok && v->mqc <= v->vlm;
        }
        check(ok, std::string(f.name) + ": m=" + std::to_string(c.m()) +
                      " gamma=2, MOMC==ceil(VLM/2), MOC<=MOMC<=VLM<=UB");
        ++verified;
    }
    // same identities on generated instances for breadth
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = random_instance(seed % 2 ? ProblemKind::tsp : ProblemKind::qap,
                                    4 + static_cast<int>(seed % 3), seed, 50);
        QuboModel c = cost_of(inst);
        QuboModel g = build_constraint(c.layout());
        PenaltyReport r = all_weights(c, g);
        bool ok = r.gamma == 2;
        for (const MethodValues* v : {&r.table, &r.invariant})
            ok = ok && v->momc == std::max<std::int64_t>(1, (v->vlm + 1) / 2) &&
                 v->moc <= v->momc && v->momc <= v->vlm && v->vlm <= v->ub;
        if (!ok) fail_line("random instance seed " + std::to_string(seed));
    }
    double dt = elapsed_s(t0);
    check(dt < 60.0, "runtime " + std::to_string(dt) + "s < 60s");
    note(std::to_string(verified) + "/20 instances verified, " +
         std::to_string(missing) + " skipped for missing data");
}

void criterion2_table3_spots() {
    std::printf("criterion 2: published weight-table spot reproduction\n");
    // had12 row, exact, on the as-built matrices.  The flip-bound methods
    // reproduce the published row under the rowwise reading of the
    // upper-triangular storage; the incident-convention values differ and
    // are printed for the record (the storage-convention finding).
    Fixture had12 = kFixtures[0];
    if (fixture_present(had12)) {
        ProblemInstance inst = load(had12);
        QuboModel c = cost_of(inst);
        QuboModel g = build_constraint(c.layout());
        PenaltyReport r = all_weights(c, g);
        check(r.table.ub == 249240, "had12 UB == 249240");
        check(r.table.mqc == 126, "had12 MQC == 126");
        check(r.table.vlm == 5460, "had12 VLM == 5460 (rowwise)");
        check(r.table.momc == 2730, "had12 MOMC == 2730 (rowwise)");
        check(r.table.moc == 488, "had12 MOC == 488 (rowwise)");
        note("had12 incident-convention values: VLM=" +
             std::to_string(r.invariant.vlm) + " MOMC=" +
             std::to_string(r.invariant.momc) + " MOC=" +
             std::to_string(r.invariant.moc) +
             " (differ from the published table; rowwise reading reproduces it)");
    } else {
        fail_line(std::string("had12: ") + kMissing);
    }
    // TSP MQC == max pairwise distance from the instance file
    struct Spot {
        const char* name;
        std::int64_t mqc;
    };
    for (const Spot& s : {Spot{"bayg29", 386}, Spot{"gr17", 745},
                          Spot{"berlin52", 1716}, Spot{"st70", 129}}) {
        auto it = std::find_if(kFixtures.begin(), kFixtures.end(),
                               [&](const Fixture& f) { return !std::strcmp(f.name, s.name); });
        if (!fixture_present(*it)) {
            skip(std::string(s.name) + ": " + kMissing);
            continue;
        }
        ProblemInstance inst = load(*it);
        QuboModel c = cost_of(inst);
        check(mqc(c) == s.mqc,
              std::string(s.name) + " MQC == " + std::to_string(s.mqc));
    }
}

void criterion3_oracle_validity() {
    std::printf("criterion 3: oracle validity on 50 random instances\n");
    auto t0 = std::chrono::steady_clock::now();
    int cases = 0;
    int mqc_pass = 0, moc_pass = 0, rw_vlm_pass = 0, rw_momc_pass = 0,
        rw_moc_pass = 0;
    bool all_ok = true;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ProblemKind kind = seed % 2 ? ProblemKind::tsp : ProblemKind::qap;
        int n;
        if (kind == ProblemKind::qap)
            n = 2 + static_cast<int>(seed / 2 % 3);        // m in {4, 9, 16}
        else
            n = 3 + static_cast<int>(seed / 2 % 3);        // m in {4, 9, 16}
        auto inst = random_instance(kind, n, seed, 9);
        QuboModel c = cost_of(inst);
        QuboModel g = build_constraint(c.layout());
        auto perm_opt = brute_force_permutation(inst);

        // Tie semantics per the oracle contract: alpha is accepted when no
        // infeasible state lies strictly below the feasible optimum; exact
        // ties resolve in favor of the feasible decoder.
        auto global_ok = [&](std::int64_t alpha) {
            ValidityReport v = check_validity(c, g, alpha);
            return v.tie_valid && v.feasible_min == perm_opt.cost;
        };

        bool ok = global_ok(ub(c)) &&
                  global_ok(vlm(c, BoundConvention::incident)) &&
                  global_ok(momc(c, g, BoundConvention::incident));
        all_ok = all_ok && ok;
        ++cases;
        if (global_ok(mqc(c))) ++mqc_pass;
        if (global_ok(moc(c, g, BoundConvention::incident))) ++moc_pass;
        if (global_ok(vlm(c, BoundConvention::rowwise))) ++rw_vlm_pass;
        if (global_ok(momc(c, g, BoundConvention::rowwise))) ++rw_momc_pass;
        if (global_ok(moc(c, g, BoundConvention::rowwise))) ++rw_moc_pass;
    }
    check(all_ok && cases == 50,
          "50/50: QUBO minimum under UB/VLM/MOMC decodes to the permutation optimum");
    note("reported pass-rates: MQC " + std::to_string(mqc_pass) + "/50, MOC " +
         std::to_string(moc_pass) + "/50, rowwise VLM " +
         std::to_string(rw_vlm_pass) + "/50, rowwise MOMC " +
         std::to_string(rw_momc_pass) + "/50, rowwise MOC " +
         std::to_string(rw_moc_pass) + "/50");
    double dt = elapsed_s(t0);
    check(dt < 120.0, "runtime " + std::to_string(dt) + "s < 2min");
}

struct CellCount {
    int feasible = 0;
    std::vector<std::int64_t> costs;
};

CellCount run_cell(const QuboModel& combined, std::int64_t beta, double mult,
                   std::uint64_t seed) {
    const std::int64_t m = combined.m();
    AnnealerConfig cfg;
    cfg.initial_temperature = mult * static_cast<double>(beta);
    cfg.final_temperature = 1.0;
    cfg.decay = 0.001;
    cfg.iterations = m * m;
    cfg.offset_increase_rate =
        cfg.initial_temperature / static_cast<double>(m * m);
    cfg.runs = 20;
    cfg.threads = 2;
    cfg.seed = seed;
    CellCount out;
    for (const RunResult& r : anneal_many(combined, cfg)) {
        if (!r.feasible) continue;
        ++out.feasible;
        out.costs.push_back(*r.cost);
    }
    return out;
}

void criterion4_feasibility_pattern() {
    std::printf("criterion 4: feasibility pattern under the five weights\n");
    auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"had12", "rou12"}) {
        auto it = std::find_if(kFixtures.begin(), kFixtures.end(),
                               [&](const Fixture& f) { return !std::strcmp(f.name, name); });
        if (!fixture_present(*it)) {
            fail_line(std::string(name) + ": " + kMissing);
            continue;
        }
        ProblemInstance inst = load(*it);
        QuboModel c = cost_of(inst);
        QuboModel g = build_constraint(c.layout());
        PenaltyReport rep = all_weights(c, g);
        const std::int64_t beta = rep.table.vlm;

        for (double mult : {0.1, 1.0, 10.0}) {
            CellCount mqc_cell =
                run_cell(combine(c, g, rep.table.mqc), beta, mult,
                         hash_key(42, 1, static_cast<std::uint64_t>(mult * 10), 0));
            check(mqc_cell.feasible == 0,
                  std::string(name) + " MQC at " + std::to_string(mult) +
                      "beta: " + std::to_string(mqc_cell.feasible) + "/20 feasible (want 0)");
        }
        struct M {
            const char* label;
            std::int64_t alpha;
            bool assert_high;
        };
        const bool is_rou12 = !std::strcmp(name, "rou12");
        std::uint64_t method_index = 0;
        for (const M& m : {M{"ub", rep.table.ub, true},
                           M{"vlm", rep.table.vlm, true},
                           M{"momc", rep.table.momc, true},
                           M{"moc", rep.table.moc, !is_rou12}}) {
            CellCount cell = run_cell(combine(c, g, m.alpha), beta, 1.0,
                                      hash_key(42, 2, ++method_index, 0));
            std::string msg = std::string(name) + " " + m.label + ": " +
                              std::to_string(cell.feasible) + "/20 feasible";
            if (m.assert_high)
                check(cell.feasible >= 18, msg + " (want >= 18)");
            else
                note(msg + " (report-only: published value is 13-14/20)");
        }
    }
    note("runtime " + std::to_string(elapsed_s(t0)) + "s");
}

void criterion5_arpd_ordering() {
    std::printf("criterion 5: ARPD ordering MOC < UB at 0.1*beta\n");
    auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"had12", "had14", "had16", "had18", "had20"}) {
        auto it = std::find_if(kFixtures.begin(), kFixtures.end(),
                               [&](const Fixture& f) { return !std::strcmp(f.name, name); });
        if (!fixture_present(*it)) {
            fail_line(std::string(name) + ": " + kMissing);
            continue;
        }
        ProblemInstance inst = load(*it);
        QuboModel c = cost_of(inst);
        QuboModel g = build_constraint(c.layout());
        PenaltyReport rep = all_weights(c, g);
        const std::int64_t beta = rep.table.vlm;

        CellCount moc_cell = run_cell(combine(c, g, rep.table.moc), beta, 0.1,
                                      hash_key(42, 5, 1, 0));
        CellCount ub_cell = run_cell(combine(c, g, rep.table.ub), beta, 0.1,
                                     hash_key(42, 5, 2, 0));
        if (moc_cell.costs.empty() || ub_cell.costs.empty()) {
            fail_line(std::string(name) + ": a method produced no feasible runs");
            continue;
        }
        double moc_arpd = *arpd(moc_cell.costs, it->optimum);
        double ub_arpd = *arpd(ub_cell.costs, it->optimum);
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: ARPD MOC %.2f%% < UB %.2f%%", name,
                      moc_arpd, ub_arpd);
        check(moc_arpd < ub_arpd, buf);
    }
    note("runtime " + std::to_string(elapsed_s(t0)) + "s");
}

void criterion6_exactness() {
    std::printf("criterion 6: exactness suite\n");

    // constraint-matrix identity, exhaustive and randomized
    auto g_direct = [](const VariableLayout& layout,
                       const std::vector<std::uint8_t>& x) {
        std::int64_t g = 0;
        for (int i = 0; i < layout.rows; ++i) {
            std::int64_t s = 0;
            for (int k = 0; k < layout.cols; ++k) s += x[layout.index(i, k)];
            g += (1 - s) * (1 - s);
        }
        for (int k = 0; k < layout.cols; ++k) {
            std::int64_t s = 0;
            for (int i = 0; i < layout.rows; ++i) s += x[layout.index(i, k)];
            g += (1 - s) * (1 - s);
        }
        return g;
    };
    {
        bool ok = true;
        for (int side : {2, 3}) {
            VariableLayout layout{side, side, LayoutKind::qap_full};
            QuboModel g = build_constraint(layout);
            const int m = layout.m();
            for (std::uint32_t v = 0; v < (1u << m); ++v) {
                std::vector<std::uint8_t> x(m);
                for (int j = 0; j < m; ++j) x[j] = (v >> j) & 1u;
                if (evaluate(g, x) != g_direct(layout, x)) ok = false;
            }
        }
        check(ok, "constraint identity exhaustive on 2^4 and 2^9 states");
        VariableLayout layout{12, 12, LayoutKind::qap_full};
        QuboModel g = build_constraint(layout);
        SplitMix64 rng(2024);
        for (int rep = 0; rep < 10000 && ok; ++rep) {
            std::vector<std::uint8_t> x(layout.m());
            for (auto& b : x) b = rng.next() & 1u;
            if (evaluate(g, x) != g_direct(layout, x)) ok = false;
        }
        check(ok, "constraint identity on 10^4 random 144-bit states");
    }

    // feasible-energy == permutation cost on bundled fixtures
    for (const auto& f : kFixtures) {
        if (!fixture_present(f)) continue;
        ProblemInstance inst = load(f);
        QuboModel c = cost_of(inst);
        const auto& layout = c.layout();
        SplitMix64 rng(7);
        bool ok = true;
        for (int rep = 0; rep < 100; ++rep) {
            std::vector<int> perm(layout.rows);
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = layout.rows - 1; i > 0; --i)
                std::swap(perm[i],
                          perm[static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1))]);
            std::vector<std::uint8_t> x(layout.m(), 0);
            for (int i = 0; i < layout.rows; ++i) x[layout.index(i, perm[i])] = 1;
            auto sigma = decode(layout, x);
            if (!sigma) {
                ok = false;
                break;
            }
            if (evaluate(c, x) != permutation_cost(inst, *sigma)) ok = false;
        }
        check(ok, std::string(f.name) +
                      ": feasible energy == permutation cost on 100 samples");
    }

    // incremental deltas against full re-evaluation, 1000-step sequences
    {
        bool ok = true;
        for (std::uint64_t seed = 0; seed < 10 && ok; ++seed) {
            auto inst = random_instance(seed % 2 ? ProblemKind::tsp : ProblemKind::qap,
                                        5, seed, 9);
            QuboModel c = cost_of(inst);
            QuboModel q = combine(c, build_constraint(c.layout()),
                                  vlm(c, BoundConvention::incident));
            SplitMix64 rng(seed);
            std::vector<std::uint8_t> x(q.m());
            for (auto& b : x) b = rng.next() & 1u;
            auto fields = init_fields(q, x);
            std::int64_t energy = evaluate(q, x);
            for (int step = 0; step < 1000; ++step) {
                int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(q.m())));
                energy += apply_flip(q, fields, j);
                if (energy != evaluate(q, fields.x)) {
                    ok = false;
                    break;
                }
            }
        }
        check(ok, "incremental delta == full re-evaluation over 10^3-flip sequences");
    }
}

void criterion7_determinism() {
    std::printf("criterion 7: byte-identical bench CSV under a fixed seed\n");
    std::filesystem::create_directories("/tmp/permqubo_acceptance");

    ExperimentConfig cfg;
    for (const auto& f : kFixtures) {
        if (!fixture_present(f)) continue;
        if (f.expected_m > 300) continue;      // keep the repeat affordable
        cfg.instances.push_back({f.name, fixture_file(f), f.kind});
        cfg.known_optima[f.name] = f.optimum;
    }
    if (cfg.instances.empty()) {
        fail_line("no desk-scale fixtures available");
        return;
    }
    cfg.methods = {Method::mqc, Method::moc};
    cfg.temperature_multipliers = {1.0};
    cfg.runs = 20;
    cfg.threads = 2;
    cfg.base_seed = 42;

    std::string csv1 = report_to_csv(run_experiment(cfg));
    std::string csv2 = report_to_csv(run_experiment(cfg));
    check(csv1 == csv2, "two identical runs produce byte-identical CSV (" +
                            std::to_string(cfg.instances.size()) + " instances)");
}

} // namespace

int main() {
    std::printf("acceptance suite (data dir: %s)\n\n", PERMQUBO_DATA_DIR);
    criterion1_penalty_identity();
    criterion2_table3_spots();
    criterion3_oracle_validity();
    criterion4_feasibility_pattern();
    criterion5_arpd_ordering();
    criterion6_exactness();
    criterion7_determinism();
    std::printf("\n%s: %d failing check(s)\n",
                g_failures ? "FAILURE" : "SUCCESS", g_failures);
    return g_failures ? 1 : 0;
}
