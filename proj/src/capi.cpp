// extern-C surface over the core.  Exceptions map to status codes at the
// boundary; handles are heap-owned core objects.
#include "permqubo/permqubo.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "core/annealer.hpp"
#include "core/bench.hpp"
#include "core/error.hpp"
#include "core/instances.hpp"
#include "core/oracle.hpp"
#include "core/penalty.hpp"
#include "core/qubo.hpp"

using namespace permqubo;

struct pq_instance {
    ProblemInstance inst;
};

struct pq_qubo {
    QuboModel model;
};

struct pq_report {
    PenaltyReport report;
};

struct pq_results {
    std::vector<RunResult> runs;
};

namespace {

void write_err(char* err_msg, const char* what) {
    if (!err_msg) return;
    std::strncpy(err_msg, what, PQ_ERROR_MSG_SIZE - 1);
    err_msg[PQ_ERROR_MSG_SIZE - 1] = '\0';
}

template <typename Fn>
pq_status guarded(char* err_msg, Fn&& fn) {
    try {
        fn();
        if (err_msg) err_msg[0] = '\0';
        return PQ_OK;
    } catch (const Error& e) {
        write_err(err_msg, e.what());
        return static_cast<pq_status>(static_cast<int>(e.code()));
    } catch (const std::bad_alloc&) {
        write_err(err_msg, "out of memory");
        return PQ_ERR_CAPACITY;
    } catch (const std::exception& e) {
        write_err(err_msg, e.what());
        return PQ_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

pq_status need(bool cond, const char* what, char* err_msg) {
    if (cond) return PQ_OK;
    write_err(err_msg, what);
    return PQ_ERR_ARGUMENT;
}

} // namespace

extern "C" {

const char* pq_version(void) { return "1.0.0"; }

void pq_string_free(char* s) { delete[] s; }

/* ---- instances ---- */

pq_status pq_parse_tsplib(const char* text, pq_instance** out, char* err_msg) {
    if (auto st = need(text && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        *out = new pq_instance{parse_tsplib(text)};
    });
}

pq_status pq_parse_qaplib(const char* text, const char* name, pq_instance** out,
                          char* err_msg) {
    if (auto st = need(text && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        *out = new pq_instance{parse_qaplib(text, name ? name : "")};
    });
}

pq_status pq_instance_from_file(const char* path, pq_problem_kind kind,
                                pq_instance** out, char* err_msg) {
    if (auto st = need(path && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        std::ifstream in(path);
        if (!in) fail(ErrorCode::io, std::string("cannot open ") + path);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string name(path);
        if (auto slash = name.find_last_of("/\\"); slash != std::string::npos)
            name = name.substr(slash + 1);
        if (auto dot = name.find_last_of('.'); dot != std::string::npos)
            name = name.substr(0, dot);
        if (kind == PQ_PROBLEM_TSP) {
            TspInstance t = parse_tsplib(buf.str());
            if (t.name.empty()) t.name = name;
            *out = new pq_instance{std::move(t)};
        } else {
            *out = new pq_instance{parse_qaplib(buf.str(), name)};
        }
    });
}

pq_status pq_random_instance(pq_problem_kind kind, int n, unsigned long long seed,
                             long long max_value, pq_instance** out,
                             char* err_msg) {
    if (auto st = need(out != nullptr, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        *out = new pq_instance{random_instance(
            kind == PQ_PROBLEM_TSP ? ProblemKind::tsp : ProblemKind::qap, n,
            seed, max_value)};
    });
}

int pq_instance_kind(const pq_instance* inst) {
    return kind_of(inst->inst) == ProblemKind::tsp ? PQ_PROBLEM_TSP
                                                   : PQ_PROBLEM_QAP;
}

int pq_instance_size(const pq_instance* inst) { return size_of(inst->inst); }

const char* pq_instance_name(const pq_instance* inst) {
    return name_of(inst->inst).c_str();
}

pq_status pq_instance_to_text(const pq_instance* inst, char** out,
                              char* err_msg) {
    if (auto st = need(inst && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        if (kind_of(inst->inst) == ProblemKind::tsp)
            *out = dup_string(to_tsplib_full_matrix(std::get<TspInstance>(inst->inst)));
        else
            *out = dup_string(to_qaplib_text(std::get<QapInstance>(inst->inst)));
    });
}

pq_status pq_instance_summary(const pq_instance* inst, char** out,
                              char* err_msg) {
    if (auto st = need(inst && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] { *out = dup_string(instance_summary(inst->inst)); });
}

void pq_instance_free(pq_instance* inst) { delete inst; }

/* ---- QUBO ---- */

pq_status pq_build_cost(const pq_instance* inst, pq_qubo** out, char* err_msg) {
    if (auto st = need(inst && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        if (kind_of(inst->inst) == ProblemKind::tsp)
            *out = new pq_qubo{build_tsp_cost(std::get<TspInstance>(inst->inst))};
        else
            *out = new pq_qubo{build_qap_cost(std::get<QapInstance>(inst->inst))};
    });
}

pq_status pq_build_constraint(const pq_qubo* model, pq_qubo** out,
                              char* err_msg) {
    if (auto st = need(model && out, "null argument", err_msg)) return st;
    return guarded(err_msg,
                   [&] { *out = new pq_qubo{build_constraint(model->model.layout())}; });
}

pq_status pq_combine(const pq_qubo* cost, const pq_qubo* constraint,
                     long long alpha, pq_qubo** out, char* err_msg) {
    if (auto st = need(cost && constraint && out, "null argument", err_msg))
        return st;
    return guarded(err_msg, [&] {
        *out = new pq_qubo{combine(cost->model, constraint->model, alpha)};
    });
}

long long pq_qubo_num_vars(const pq_qubo* q) { return q->model.m(); }

long long pq_qubo_constant(const pq_qubo* q) { return q->model.constant(); }

pq_status pq_qubo_evaluate(const pq_qubo* q, const unsigned char* x,
                           long long len, long long* energy, char* err_msg) {
    if (auto st = need(q && x && energy, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        std::vector<std::uint8_t> bits(x, x + len);
        *energy = evaluate(q->model, bits);
    });
}

pq_status pq_qubo_decode(const pq_qubo* q, const unsigned char* x, long long len,
                         int* feasible, int* perm, long long perm_cap,
                         long long* perm_len, char* err_msg) {
    if (auto st = need(q && x && feasible, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        std::vector<std::uint8_t> bits(x, x + len);
        auto sigma = decode(q->model.layout(), bits);
        *feasible = sigma.has_value() ? 1 : 0;
        if (perm_len) *perm_len = sigma ? static_cast<long long>(sigma->size()) : 0;
        if (sigma && perm) {
            if (perm_cap < static_cast<long long>(sigma->size()))
                fail(ErrorCode::argument, "permutation buffer too small");
            std::copy(sigma->begin(), sigma->end(), perm);
        }
    });
}

pq_status pq_qubo_to_text(const pq_qubo* q, char** out, char* err_msg) {
    if (auto st = need(q && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] { *out = dup_string(to_text(q->model)); });
}

pq_status pq_qubo_from_text(const char* text, pq_qubo** out, char* err_msg) {
    if (auto st = need(text && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] { *out = new pq_qubo{from_text(text)}; });
}

pq_status pq_qubo_to_json(const pq_qubo* q, char** out, char* err_msg) {
    if (auto st = need(q && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] { *out = dup_string(to_json(q->model)); });
}

pq_status pq_qubo_from_json(const char* text, pq_qubo** out, char* err_msg) {
    if (auto st = need(text && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] { *out = new pq_qubo{from_json(text)}; });
}

void pq_qubo_free(pq_qubo* q) { delete q; }

/* ---- penalty ---- */

pq_status pq_penalty_weights(const pq_qubo* cost, const pq_qubo* constraint,
                             pq_report** out, char* err_msg) {
    if (auto st = need(cost && constraint && out, "null argument", err_msg))
        return st;
    return guarded(err_msg, [&] {
        *out = new pq_report{all_weights(cost->model, constraint->model)};
    });
}

long long pq_report_alpha(const pq_report* rep, pq_method method,
                          pq_convention conv) {
    const MethodValues& v = conv == PQ_CONV_TABLE ? rep->report.table
                                                  : rep->report.invariant;
    switch (method) {
    case PQ_METHOD_UB: return v.ub;
    case PQ_METHOD_MQC: return v.mqc;
    case PQ_METHOD_VLM: return v.vlm;
    case PQ_METHOD_MOMC: return v.momc;
    case PQ_METHOD_MOC: return v.moc;
    }
    return 1;
}

long long pq_report_gamma(const pq_report* rep) { return rep->report.gamma; }

pq_status pq_report_to_json(const pq_report* rep, char** out, char* err_msg) {
    if (auto st = need(rep && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] { *out = dup_string(report_to_json(rep->report)); });
}

pq_status pq_report_to_table(const pq_report* rep, char** out, char* err_msg) {
    if (auto st = need(rep && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] { *out = dup_string(report_to_table(rep->report)); });
}

void pq_report_free(pq_report* rep) { delete rep; }

/* ---- annealer ---- */

pq_anneal_params pq_anneal_params_default(void) {
    pq_anneal_params p;
    p.initial_temperature = 1000.0;
    p.final_temperature = 1.0;
    p.decay = 0.001;
    p.offset_increase_rate = 0.0;
    p.iterations = 1000;
    p.seed = 42;
    p.runs = 1;
    p.threads = 1;
    return p;
}

pq_status pq_anneal(const pq_qubo* q, const pq_anneal_params* params,
                    pq_results** out, char* err_msg) {
    if (auto st = need(q && params && out, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        AnnealerConfig cfg;
        cfg.initial_temperature = params->initial_temperature;
        cfg.final_temperature = params->final_temperature;
        cfg.decay = params->decay;
        cfg.offset_increase_rate = params->offset_increase_rate;
        cfg.iterations = params->iterations;
        cfg.seed = params->seed;
        cfg.runs = params->runs;
        cfg.threads = params->threads;
        *out = new pq_results{anneal_many(q->model, cfg)};
    });
}

int pq_results_count(const pq_results* res) {
    return static_cast<int>(res->runs.size());
}

long long pq_result_energy(const pq_results* res, int i) {
    return res->runs[static_cast<std::size_t>(i)].best_energy;
}

int pq_result_feasible(const pq_results* res, int i) {
    return res->runs[static_cast<std::size_t>(i)].feasible ? 1 : 0;
}

long long pq_result_best_iteration(const pq_results* res, int i) {
    return res->runs[static_cast<std::size_t>(i)].best_iteration;
}

long long pq_result_accepted_flips(const pq_results* res, int i) {
    return res->runs[static_cast<std::size_t>(i)].accepted_flips;
}

pq_status pq_result_cost(const pq_results* res, int i, long long* cost,
                         char* err_msg) {
    if (auto st = need(res && cost, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        const auto& r = res->runs.at(static_cast<std::size_t>(i));
        if (!r.cost) fail(ErrorCode::method, "run is infeasible, no cost");
        *cost = *r.cost;
    });
}

pq_status pq_result_bits(const pq_results* res, int i, unsigned char* buf,
                         long long cap, char* err_msg) {
    if (auto st = need(res && buf, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        const auto& r = res->runs.at(static_cast<std::size_t>(i));
        if (cap < static_cast<long long>(r.best_x.size()))
            fail(ErrorCode::argument, "bit buffer too small");
        std::copy(r.best_x.begin(), r.best_x.end(), buf);
    });
}

pq_status pq_result_permutation(const pq_results* res, int i, int* buf,
                                long long cap, long long* len, char* err_msg) {
    if (auto st = need(res && buf, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        const auto& r = res->runs.at(static_cast<std::size_t>(i));
        if (!r.permutation) fail(ErrorCode::method, "run is infeasible");
        if (cap < static_cast<long long>(r.permutation->size()))
            fail(ErrorCode::argument, "permutation buffer too small");
        std::copy(r.permutation->begin(), r.permutation->end(), buf);
        if (len) *len = static_cast<long long>(r.permutation->size());
    });
}

void pq_results_free(pq_results* res) { delete res; }

/* ---- oracle ---- */

pq_status pq_brute_force(const pq_qubo* q, unsigned char* xbuf, long long cap,
                         long long* energy, char* err_msg) {
    if (auto st = need(q && energy, "null argument", err_msg)) return st;
    return guarded(err_msg, [&] {
        BruteForceResult r = brute_force_qubo(q->model);
        *energy = r.energy;
        if (xbuf) {
            if (cap < static_cast<long long>(r.x.size()))
                fail(ErrorCode::argument, "bit buffer too small");
            std::copy(r.x.begin(), r.x.end(), xbuf);
        }
    });
}

pq_status pq_check_validity(const pq_qubo* cost, const pq_qubo* constraint,
                            long long alpha, char** json_out, char* err_msg) {
    if (auto st = need(cost && constraint && json_out, "null argument", err_msg))
        return st;
    return guarded(err_msg, [&] {
        ValidityReport rep = check_validity(cost->model, constraint->model, alpha);
        *json_out = dup_string(validity_to_json(rep));
    });
}

/* ---- bench ---- */

pq_status pq_run_experiment(const char* config_json, char** csv_out,
                            char** json_out, char* err_msg) {
    if (auto st = need(config_json != nullptr, "null argument", err_msg))
        return st;
    return guarded(err_msg, [&] {
        ExperimentConfig cfg = config_from_json(config_json);
        BenchReport report = run_experiment(cfg);
        if (csv_out) *csv_out = dup_string(report_to_csv(report));
        if (json_out) *json_out = dup_string(report_to_json(report));
    });
}

} /* extern "C" */
