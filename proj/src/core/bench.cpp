#include "bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "checked.hpp"
#include "error.hpp"
#include "oracle.hpp"
#include "rng.hpp"

namespace permqubo {

const char* method_name(Method m) {
    switch (m) {
    case Method::ub: return "ub";
    case Method::mqc: return "mqc";
    case Method::vlm: return "vlm";
    case Method::momc: return "momc";
    case Method::moc: return "moc";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    for (Method m : {Method::ub, Method::mqc, Method::vlm, Method::momc, Method::moc})
        if (name == method_name(m)) return m;
    fail(ErrorCode::argument, "unknown method '" + name + "'");
}

std::int64_t permutation_cost(const ProblemInstance& inst,
                              const std::vector<int>& sigma) {
    const int n = size_of(inst);
    if (static_cast<int>(sigma.size()) != n)
        fail(ErrorCode::argument, "permutation length mismatch");
    std::vector<char> seen(n, 0);
    for (int v : sigma) {
        if (v < 0 || v >= n || seen[v])
            fail(ErrorCode::argument, "invalid permutation");
        seen[v] = 1;
    }
    std::int64_t cost = 0;
    if (kind_of(inst) == ProblemKind::qap) {
        const auto& qap = std::get<QapInstance>(inst);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cost = checked_add(cost, checked_mul(qap.flow.at(i, j),
                                                     qap.dist.at(sigma[i], sigma[j])));
    } else {
        const auto& tsp = std::get<TspInstance>(inst);
        for (int i = 1; i < n; ++i)
            cost = checked_add(cost, tsp.dist.at(sigma[i - 1], sigma[i]));
        cost = checked_add(cost, tsp.dist.at(sigma[n - 1], sigma[0]));
    }
    return cost;
}

std::optional<double> arpd(const std::vector<std::int64_t>& costs,
                           std::int64_t optimal) {
    if (costs.empty()) return std::nullopt;
    if (optimal <= 0) fail(ErrorCode::argument, "optimal must be positive");
    double sum = 0.0;
    for (std::int64_t c : costs)
        sum += static_cast<double>(c - optimal) / static_cast<double>(optimal);
    return sum / static_cast<double>(costs.size()) * 100.0;
}

ExperimentConfig config_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::config, std::string("bad experiment config: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        for (const auto& it : j.at("instances")) {
            ExperimentConfig::InstanceSpec spec;
            spec.name = it.at("name").get<std::string>();
            spec.path = it.at("path").get<std::string>();
            const std::string kind = it.at("kind").get<std::string>();
            if (kind == "tsp") spec.kind = ProblemKind::tsp;
            else if (kind == "qap") spec.kind = ProblemKind::qap;
            else fail(ErrorCode::config, "instance kind must be tsp or qap");
            cfg.instances.push_back(std::move(spec));
        }
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (const auto& m : j.at("methods"))
                cfg.methods.push_back(method_from_name(m.get<std::string>()));
        }
        if (j.contains("temperature_multipliers")) {
            cfg.temperature_multipliers.clear();
            for (const auto& t : j.at("temperature_multipliers"))
                cfg.temperature_multipliers.push_back(t.get<double>());
        }
        if (j.contains("runs")) cfg.runs = j.at("runs").get<int>();
        if (j.contains("iterations")) cfg.iterations = j.at("iterations").get<std::int64_t>();
        if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
        if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
        if (j.contains("include_large")) cfg.include_large = j.at("include_large").get<bool>();
        if (j.contains("convention")) {
            const std::string c = j.at("convention").get<std::string>();
            if (c == "rowwise") cfg.convention = BoundConvention::rowwise;
            else if (c == "incident") cfg.convention = BoundConvention::incident;
            else fail(ErrorCode::config, "convention must be rowwise or incident");
        }
        if (j.contains("known_optima"))
            for (const auto& [k, v] : j.at("known_optima").items())
                cfg.known_optima[k] = v.get<std::int64_t>();
        if (j.contains("known_optima_file")) {
            const std::string path = j.at("known_optima_file").get<std::string>();
            std::ifstream in(path);
            if (!in) fail(ErrorCode::io, "cannot open optima file " + path);
            nlohmann::json optima = nlohmann::json::parse(in);
            for (const auto& [k, v] : optima.items())
                if (v.is_number_integer())
                    cfg.known_optima.emplace(k, v.get<std::int64_t>());
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::config, std::string("bad experiment config: ") + e.what());
    }
    return cfg;
}

namespace {

ProblemInstance load_instance(const ExperimentConfig::InstanceSpec& spec) {
    std::ifstream in(spec.path);
    if (!in) fail(ErrorCode::io, "cannot open instance file " + spec.path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (spec.kind == ProblemKind::tsp) {
        TspInstance t = parse_tsplib(buf.str());
        if (t.name.empty()) t.name = spec.name;
        return t;
    }
    return parse_qaplib(buf.str(), spec.name);
}

std::int64_t alpha_for(Method m, const PenaltyReport& rep,
                       BoundConvention conv) {
    const MethodValues& v =
        conv == BoundConvention::rowwise ? rep.table : rep.invariant;
    switch (m) {
    case Method::ub: return v.ub;
    case Method::mqc: return v.mqc;
    case Method::vlm: return v.vlm;
    case Method::momc: return v.momc;
    case Method::moc: return v.moc;
    }
    return 1;
}

} // namespace

BenchReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.runs < 1) fail(ErrorCode::config, "runs must be >= 1");
    BenchReport report;

    std::size_t inst_idx = 0;
    for (const auto& spec : cfg.instances) {
        const std::size_t this_inst = inst_idx++;
        ProblemInstance inst = load_instance(spec);
        const std::string& name = spec.name;

        QuboModel cost = kind_of(inst) == ProblemKind::tsp
                             ? build_tsp_cost(std::get<TspInstance>(inst))
                             : build_qap_cost(std::get<QapInstance>(inst));
        if (cost.m() > kLargeVariableThreshold && !cfg.include_large)
            fail(ErrorCode::config,
                 "instance " + name + " has m=" + std::to_string(cost.m()) +
                     " > 900; pass include_large/--large to run it");
        QuboModel constraint = build_constraint(cost.layout());
        PenaltyReport weights = all_weights(cost, constraint);
        const std::int64_t beta = alpha_for(Method::vlm, weights, cfg.convention);
        const std::int64_t m = cost.m();
        const std::int64_t iterations =
            cfg.iterations > 0 ? cfg.iterations : checked_mul(m, m);

        auto optimum = cfg.known_optima.find(name);

        std::size_t method_idx = 0;
        for (Method method : cfg.methods) {
            const std::size_t this_method = method_idx++;
            const std::int64_t alpha = alpha_for(method, weights, cfg.convention);
            QuboModel combined = combine(cost, constraint, alpha);

            std::size_t mult_idx = 0;
            for (double mult : cfg.temperature_multipliers) {
                const std::size_t this_mult = mult_idx++;
                AnnealerConfig acfg;
                acfg.initial_temperature = mult * static_cast<double>(beta);
                acfg.final_temperature = 1.0;
                acfg.decay = 0.001;
                acfg.iterations = iterations;
                acfg.offset_increase_rate =
                    acfg.initial_temperature /
                    static_cast<double>(checked_mul(m, m));
                acfg.runs = cfg.runs;
                acfg.threads = cfg.threads;
                // Cell seed depends only on the cell coordinates, never on
                // execution order.
                acfg.seed = hash_key(cfg.base_seed, this_inst, this_method, this_mult);

                const auto t0 = std::chrono::steady_clock::now();
                std::vector<RunResult> runs = anneal_many(combined, acfg);
                const auto t1 = std::chrono::steady_clock::now();

                CellResult cell;
                cell.instance = name;
                cell.method = method;
                cell.multiplier = mult;
                cell.alpha = alpha;
                cell.runs = cfg.runs;
                cell.wall_ms =
                    std::chrono::duration<double, std::milli>(t1 - t0).count();
                for (const RunResult& r : runs) {
                    if (!r.feasible) continue;
                    ++cell.feasible_count;
                    const std::int64_t c = permutation_cost(inst, *r.permutation);
                    if (c != *r.cost)
                        fail(ErrorCode::internal,
                             "decoded cost disagrees with QUBO energy");
                    cell.costs.push_back(c);
                }
                if (!cell.costs.empty()) {
                    cell.min_cost = *std::min_element(cell.costs.begin(), cell.costs.end());
                    cell.max_cost = *std::max_element(cell.costs.begin(), cell.costs.end());
                    double sum = 0;
                    for (auto c : cell.costs) sum += static_cast<double>(c);
                    cell.mean_cost = sum / static_cast<double>(cell.costs.size());
                    if (optimum == cfg.known_optima.end())
                        fail(ErrorCode::config,
                             "no known optimum for instance " + name);
                    cell.arpd = arpd(cell.costs, optimum->second);
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }
    return report;
}

std::string report_to_csv(const BenchReport& report) {
    std::ostringstream out;
    out << "instance,method,multiplier,feasible_count,runs,arpd,min_cost,mean_cost,max_cost\n";
    for (const auto& c : report.cells) {
        out << c.instance << ',' << method_name(c.method) << ',';
        char buf[64];
        std::snprintf(buf, sizeof buf, "%g", c.multiplier);
        out << buf << ',' << c.feasible_count << ',' << c.runs << ',';
        if (c.arpd) {
            std::snprintf(buf, sizeof buf, "%.4f", *c.arpd);
            out << buf;
        }
        out << ',';
        if (!c.costs.empty()) {
            out << c.min_cost << ',';
            std::snprintf(buf, sizeof buf, "%.2f", c.mean_cost);
            out << buf << ',' << c.max_cost;
        } else {
            out << ",,";
        }
        out << "\n";
    }
    return out.str();
}

std::string report_to_json(const BenchReport& report) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.cells) {
        nlohmann::json jc;
        jc["instance"] = c.instance;
        jc["method"] = method_name(c.method);
        jc["multiplier"] = c.multiplier;
        jc["alpha"] = c.alpha;
        jc["runs"] = c.runs;
        jc["feasible_count"] = c.feasible_count;
        if (c.arpd) jc["arpd"] = *c.arpd;
        jc["costs"] = c.costs;
        jc["wall_ms"] = c.wall_ms;
        cells.push_back(std::move(jc));
    }
    return nlohmann::json{{"cells", cells}}.dump(2);
}

std::string report_to_text(const BenchReport& report) {
    std::ostringstream out;
    out << std::left << std::setw(12) << "instance" << std::setw(7) << "method"
        << std::right << std::setw(6) << "mult" << std::setw(14) << "alpha"
        << std::setw(10) << "feasible" << std::setw(10) << "arpd" << "\n";
    for (const auto& c : report.cells) {
        out << std::left << std::setw(12) << c.instance << std::setw(7)
            << method_name(c.method) << std::right << std::setw(6) << c.multiplier
            << std::setw(14) << c.alpha << std::setw(7) << c.feasible_count << "/"
            << std::left << std::setw(2) << c.runs << std::right;
        if (c.arpd) {
            out << std::setw(9) << std::fixed << std::setprecision(2) << *c.arpd;
            out.unsetf(std::ios::fixed);
        } else {
            out << std::setw(9) << "-";
        }
        out << "\n";
    }
    return out.str();
}

} // namespace permqubo
