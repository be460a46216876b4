// permqubo command line: parse / build / weights / solve / bench / validate.
// Exit codes: 0 success, 1 domain error, 2 usage error.  Every error path
// prints one "error: <category>: <reason>" line on stderr.
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permqubo/permqubo.h"

namespace {

const char* status_name(pq_status st) {
    switch (st) {
    case PQ_OK: return "ok";
    case PQ_ERR_PARSE: return "parse";
    case PQ_ERR_ARGUMENT: return "argument";
    case PQ_ERR_CAPACITY: return "capacity";
    case PQ_ERR_METHOD: return "method";
    case PQ_ERR_OVERFLOW: return "overflow";
    case PQ_ERR_IO: return "io";
    case PQ_ERR_CONFIG: return "config";
    case PQ_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

struct Fatal {
    pq_status status;
};

char g_err[PQ_ERROR_MSG_SIZE];

void check(pq_status st) {
    if (st == PQ_OK) return;
    std::cerr << "error: " << status_name(st) << ": " << g_err << "\n";
    throw Fatal{st};
}

struct StringOut {
    char* s = nullptr;
    ~StringOut() { pq_string_free(s); }
};

using InstancePtr = std::unique_ptr<pq_instance, decltype(&pq_instance_free)>;
using QuboPtr = std::unique_ptr<pq_qubo, decltype(&pq_qubo_free)>;
using ReportPtr = std::unique_ptr<pq_report, decltype(&pq_report_free)>;
using ResultsPtr = std::unique_ptr<pq_results, decltype(&pq_results_free)>;

InstancePtr load_instance(const std::string& path, const std::string& problem) {
    pq_instance* raw = nullptr;
    pq_problem_kind kind = problem == "tsp" ? PQ_PROBLEM_TSP : PQ_PROBLEM_QAP;
    check(pq_instance_from_file(path.c_str(), kind, &raw, g_err));
    return InstancePtr(raw, pq_instance_free);
}

QuboPtr build_cost(const pq_instance* inst) {
    pq_qubo* raw = nullptr;
    check(pq_build_cost(inst, &raw, g_err));
    return QuboPtr(raw, pq_qubo_free);
}

QuboPtr build_constraint(const pq_qubo* cost) {
    pq_qubo* raw = nullptr;
    check(pq_build_constraint(cost, &raw, g_err));
    return QuboPtr(raw, pq_qubo_free);
}

pq_method method_from(const std::string& name) {
    if (name == "ub") return PQ_METHOD_UB;
    if (name == "mqc") return PQ_METHOD_MQC;
    if (name == "vlm") return PQ_METHOD_VLM;
    if (name == "momc") return PQ_METHOD_MOMC;
    return PQ_METHOD_MOC;
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: io: cannot write " << out_path << "\n";
        throw Fatal{PQ_ERR_IO};
    }
    out << content;
}

long long guard_large(const pq_qubo* q, bool large_ok) {
    long long m = pq_qubo_num_vars(q);
    if (m > 900 && !large_ok) {
        std::cerr << "error: config: instance has m=" << m
                  << " > 900 variables; pass --large to run it\n";
        throw Fatal{PQ_ERR_CONFIG};
    }
    return m;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutation problems as penalized QUBOs + digital-annealing solver"};
    app.require_subcommand(1);

    std::string problem = "tsp", input, method = "all", format = "text", out_path;
    std::string config_path;
    double t0_mult = 1.0;
    long long runs = 20, iterations = 0, alpha_override = 0;
    unsigned long long seed = 42;
    int threads = 1;
    bool large = false;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        cmd->add_option("--problem", problem, "problem kind")
            ->check(CLI::IsMember({"tsp", "qap"}));
        auto* opt = cmd->add_option("--input", input, "instance file");
        if (needs_input) opt->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_flag("--large", large, "allow instances with m > 900");
        cmd->add_option("--threads", threads, "worker threads");
    };

    auto* cmd_parse = app.add_subcommand("parse", "parse an instance and print a summary");
    add_common(cmd_parse, true);

    auto* cmd_build = app.add_subcommand("build", "write cost and constraint QUBO files");
    add_common(cmd_build, true);

    auto* cmd_weights = app.add_subcommand("weights", "compute the five penalty weights");
    add_common(cmd_weights, true);

    auto* cmd_solve = app.add_subcommand("solve", "anneal a penalized instance");
    add_common(cmd_solve, true);
    cmd_solve->add_option("--method", method, "penalty method or 'all'")
        ->check(CLI::IsMember({"ub", "mqc", "vlm", "momc", "moc", "all"}));
    cmd_solve->add_option("--alpha", alpha_override, "explicit penalty weight");
    cmd_solve->add_option("--t0-mult", t0_mult, "initial temperature multiplier of beta")
        ->check(CLI::IsMember(std::vector<double>{0.1, 1.0, 10.0}));
    cmd_solve->add_option("--runs", runs, "independent runs");
    cmd_solve->add_option("--iterations", iterations, "iterations (default m^2)");
    cmd_solve->add_option("--seed", seed, "base seed");

    auto* cmd_bench = app.add_subcommand("bench", "run the experiment pipeline from a JSON config");
    cmd_bench->add_option("--config", config_path, "experiment JSON config")->required();
    cmd_bench->add_option("--out", out_path, "CSV output file (default stdout)");
    cmd_bench->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}));

    auto* cmd_validate = app.add_subcommand("validate", "exhaustive penalty validity check (m <= 24)");
    add_common(cmd_validate, true);
    cmd_validate->add_option("--alpha", alpha_override, "penalty weight to validate")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_parse->parsed()) {
            auto inst = load_instance(input, problem);
            StringOut s;
            check(pq_instance_summary(inst.get(), &s.s, g_err));
            write_output(out_path, s.s);
            return 0;
        }

        if (cmd_build->parsed()) {
            auto inst = load_instance(input, problem);
            auto cost = build_cost(inst.get());
            guard_large(cost.get(), large);
            auto constraint = build_constraint(cost.get());
            const bool json = format == "json";
            auto dump = [&](const pq_qubo* q, const std::string& suffix) {
                StringOut s;
                check(json ? pq_qubo_to_json(q, &s.s, g_err)
                           : pq_qubo_to_text(q, &s.s, g_err));
                std::string base = out_path.empty()
                                       ? std::string(pq_instance_name(inst.get()))
                                       : out_path;
                std::string path = base + suffix + (json ? ".json" : ".txt");
                std::ofstream f(path);
                if (!f) {
                    std::cerr << "error: io: cannot write " << path << "\n";
                    throw Fatal{PQ_ERR_IO};
                }
                f << s.s;
                std::cout << "wrote " << path << "\n";
            };
            dump(cost.get(), ".cost");
            dump(constraint.get(), ".constraint");
            return 0;
        }

        if (cmd_weights->parsed()) {
            auto inst = load_instance(input, problem);
            auto cost = build_cost(inst.get());
            auto constraint = build_constraint(cost.get());
            pq_report* raw = nullptr;
            check(pq_penalty_weights(cost.get(), constraint.get(), &raw, g_err));
            ReportPtr rep(raw, pq_report_free);
            StringOut s;
            check(format == "json" ? pq_report_to_json(rep.get(), &s.s, g_err)
                                   : pq_report_to_table(rep.get(), &s.s, g_err));
            write_output(out_path, s.s);
            return 0;
        }

        if (cmd_solve->parsed()) {
            auto inst = load_instance(input, problem);
            auto cost = build_cost(inst.get());
            long long m = guard_large(cost.get(), large);
            auto constraint = build_constraint(cost.get());
            pq_report* rep_raw = nullptr;
            check(pq_penalty_weights(cost.get(), constraint.get(), &rep_raw, g_err));
            ReportPtr rep(rep_raw, pq_report_free);

            long long alpha = alpha_override;
            if (alpha == 0)
                alpha = pq_report_alpha(rep.get(),
                                        method_from(method == "all" ? "moc" : method),
                                        PQ_CONV_TABLE);
            pq_qubo* combined_raw = nullptr;
            check(pq_combine(cost.get(), constraint.get(), alpha, &combined_raw, g_err));
            QuboPtr combined(combined_raw, pq_qubo_free);

            pq_anneal_params params = pq_anneal_params_default();
            double beta = static_cast<double>(
                pq_report_alpha(rep.get(), PQ_METHOD_VLM, PQ_CONV_TABLE));
            params.initial_temperature = t0_mult * beta;
            params.final_temperature = 1.0;
            params.decay = 0.001;
            params.iterations = iterations > 0 ? iterations : m * m;
            params.offset_increase_rate =
                params.initial_temperature / static_cast<double>(m * m);
            params.seed = seed;
            params.runs = static_cast<int>(runs);
            params.threads = threads;

            pq_results* res_raw = nullptr;
            check(pq_anneal(combined.get(), &params, &res_raw, g_err));
            ResultsPtr res(res_raw, pq_results_free);

            std::ostringstream report;
            int feasible = 0;
            std::vector<int> perm(static_cast<std::size_t>(m) + 1);
            for (int i = 0; i < pq_results_count(res.get()); ++i) {
                report << "run " << i << ": energy " << pq_result_energy(res.get(), i);
                if (pq_result_feasible(res.get(), i)) {
                    ++feasible;
                    long long cost_value = 0;
                    check(pq_result_cost(res.get(), i, &cost_value, g_err));
                    long long len = 0;
                    check(pq_result_permutation(res.get(), i, perm.data(),
                                                static_cast<long long>(perm.size()),
                                                &len, g_err));
                    report << " feasible cost " << cost_value << " permutation";
                    for (long long k = 0; k < len; ++k) report << ' ' << perm[k] + 1;
                } else {
                    report << " infeasible";
                }
                report << "\n";
            }
            report << "alpha " << alpha << " feasible " << feasible << "/"
                   << pq_results_count(res.get()) << "\n";
            write_output(out_path, report.str());
            return 0;
        }

        if (cmd_bench->parsed()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: io: cannot open " << config_path << "\n";
                return 1;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            StringOut csv, json;
            check(pq_run_experiment(buf.str().c_str(), &csv.s, &json.s, g_err));
            write_output(out_path, format == "json" ? std::string(json.s)
                                                    : std::string(csv.s));
            return 0;
        }

        if (cmd_validate->parsed()) {
            auto inst = load_instance(input, problem);
            auto cost = build_cost(inst.get());
            auto constraint = build_constraint(cost.get());
            StringOut s;
            check(pq_check_validity(cost.get(), constraint.get(), alpha_override,
                                    &s.s, g_err));
            write_output(out_path, std::string(s.s) + "\n");
            return 0;
        }
    } catch (const Fatal&) {
        return 1;
    }
    return 2;
}
