#include "oracle.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "checked.hpp"
#include "error.hpp"

namespace permqubo {

namespace {

constexpr int kMaxEnumerationBits = 24;

// Dense mirror of the packed triangle; m is tiny here.
struct DenseView {
    int m;
    std::vector<std::int64_t> diag;
    std::vector<std::int64_t> couple;   // m x m symmetric, zero diagonal

    explicit DenseView(const QuboModel& q) : m(q.m()) {
        diag.resize(m);
        couple.assign(static_cast<std::size_t>(m) * m, 0);
        for (int r = 0; r < m; ++r) {
            diag[r] = q.coeff(r, r);
            for (int c = r + 1; c < m; ++c) {
                std::int64_t v = q.coeff(r, c);
                couple[static_cast<std::size_t>(r) * m + c] = v;
                couple[static_cast<std::size_t>(c) * m + r] = v;
            }
        }
    }
};

// Lexicographic enumeration of all bit vectors with amortized O(m) updates:
// integer bit j corresponds to x[m-1-j], so counting order equals lex order
// on x and the first minimum seen is the lex-smallest one.
template <typename Visit>
void enumerate(const std::vector<DenseView>& views,
               std::vector<std::int64_t>& energies, Visit&& visit) {
    const int m = views.front().m;
    std::vector<std::uint8_t> x(m, 0);
    std::vector<std::vector<std::int64_t>> fields(views.size());
    for (std::size_t v = 0; v < views.size(); ++v)
        fields[v] = views[v].diag;   // all-zero state: h[j] = diag[j]

    visit(x);
    const std::uint64_t total = std::uint64_t(1) << m;
    for (std::uint64_t k = 1; k < total; ++k) {
        const int flips = __builtin_ctzll(k) + 1;
        for (int b = 0; b < flips; ++b) {
            const int j = m - 1 - b;
            const std::int64_t sign = x[j] ? -1 : 1;
            for (std::size_t v = 0; v < views.size(); ++v) {
                energies[v] += sign * fields[v][j];
                const std::int64_t* row =
                    views[v].couple.data() + static_cast<std::size_t>(j) * m;
                auto& h = fields[v];
                for (int i = 0; i < m; ++i) h[i] += sign * row[i];
                h[j] -= sign * row[j];
            }
            x[j] ^= 1;
        }
        visit(x);
    }
}

} // namespace

BruteForceResult brute_force_qubo(const QuboModel& model) {
    if (model.m() > kMaxEnumerationBits)
        fail(ErrorCode::capacity, "brute force limited to m <= 24 variables");
    DenseView view(model);
    std::vector<DenseView> views{view};
    std::vector<std::int64_t> energies{model.constant()};

    BruteForceResult best;
    best.x.assign(model.m(), 0);
    best.energy = model.constant();
    enumerate(views, energies, [&](const std::vector<std::uint8_t>& x) {
        if (energies[0] < best.energy) {
            best.energy = energies[0];
            best.x = x;
        }
    });
    return best;
}

PermutationOptimum brute_force_permutation(const ProblemInstance& inst) {
    const int n = size_of(inst);
    if (n > 9)
        fail(ErrorCode::capacity, "permutation brute force limited to n <= 9");

    PermutationOptimum best;
    if (kind_of(inst) == ProblemKind::qap) {
        const auto& qap = std::get<QapInstance>(inst);
        std::vector<int> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        bool first = true;
        do {
            std::int64_t cost = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    cost += qap.flow.at(i, j) * qap.dist.at(sigma[i], sigma[j]);
            if (first || cost < best.cost) {
                best.cost = cost;
                best.permutation = sigma;
                first = false;
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
        return best;
    }

    const auto& tsp = std::get<TspInstance>(inst);
    tsp.validate();
    std::vector<int> rest(n - 1);
    std::iota(rest.begin(), rest.end(), 1);
    bool first = true;
    do {
        std::int64_t cost = tsp.dist.at(0, rest.front());
        for (int i = 1; i < n - 1; ++i) cost += tsp.dist.at(rest[i - 1], rest[i]);
        cost += tsp.dist.at(rest.back(), 0);
        if (first || cost < best.cost) {
            best.cost = cost;
            best.permutation.assign(1, 0);
            best.permutation.insert(best.permutation.end(), rest.begin(), rest.end());
            first = false;
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

ValidityReport check_validity(const QuboModel& cost, const QuboModel& constraint,
                              std::int64_t alpha) {
    if (cost.m() != constraint.m())
        fail(ErrorCode::argument, "check_validity needs matching dimensions");
    if (cost.m() > kMaxEnumerationBits)
        fail(ErrorCode::capacity, "validity enumeration limited to m <= 24");
    if (alpha < 1) fail(ErrorCode::argument, "penalty weight must be >= 1");

    std::vector<DenseView> views;
    views.emplace_back(cost);
    views.emplace_back(constraint);
    std::vector<std::int64_t> energies{cost.constant(), constraint.constant()};

    ValidityReport report;
    report.alpha = alpha;
    bool any_feasible = false, any_infeasible = false;
    enumerate(views, energies, [&](const std::vector<std::uint8_t>& x) {
        const std::int64_t c = energies[0];
        const std::int64_t g = energies[1];
        if (g == 0) {
            if (!any_feasible || c < report.feasible_min) {
                report.feasible_min = c;
                any_feasible = true;
            }
        } else {
            const std::int64_t e = checked_add(c, checked_mul(alpha, g));
            if (!any_infeasible || e < report.infeasible_min) {
                report.infeasible_min = e;
                report.witness = x;
                any_infeasible = true;
            }
        }
    });
    if (!any_feasible)
        fail(ErrorCode::method, "constraint admits no feasible assignment");
    if (!any_infeasible)
        fail(ErrorCode::method, "constraint admits no infeasible assignment");
    report.strictly_valid = report.infeasible_min > report.feasible_min;
    report.tie_valid = report.infeasible_min >= report.feasible_min;
    return report;
}

std::string validity_to_json(const ValidityReport& report) {
    nlohmann::json j;
    j["alpha"] = report.alpha;
    j["feasible_min"] = report.feasible_min;
    j["infeasible_min"] = report.infeasible_min;
    j["strictly_valid"] = report.strictly_valid;
    j["tie_valid"] = report.tie_valid;
    std::string bits(report.witness.size(), '0');
    for (std::size_t i = 0; i < report.witness.size(); ++i)
        if (report.witness[i]) bits[i] = '1';
    j["witness"] = bits;
    return j.dump(2);
}

} // namespace permqubo
