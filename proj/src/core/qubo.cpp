#include "qubo.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "checked.hpp"
#include "error.hpp"

namespace permqubo {

namespace {

// Keeps the unchecked annealer arithmetic safe: a model whose magnitude
// stays below this bound cannot overflow int64 under single-flip updates.
constexpr std::int64_t kMagnitudeLimit = std::int64_t(1) << 61;

void check_magnitude(const QuboModel& m) {
    if (m.magnitude() >= kMagnitudeLimit)
        fail(ErrorCode::overflow, "QUBO coefficients too large for exact arithmetic");
}

} // namespace

QuboModel::QuboModel(VariableLayout layout, std::int64_t constant)
    : m_(layout.m()), layout_(layout), constant_(constant) {
    if (m_ <= 0) fail(ErrorCode::argument, "QUBO needs at least one variable");
    coeff_.assign(static_cast<std::size_t>(m_) * (m_ + 1) / 2, 0);
}

std::size_t QuboModel::tri(int r, int c) const {
    if (r < 0 || c < r || c >= m_)
        fail(ErrorCode::argument, "QUBO index out of range (need 0 <= r <= c < m)");
    std::size_t row = static_cast<std::size_t>(r);
    return row * m_ - row * (row - 1) / 2 + static_cast<std::size_t>(c - r);
}

void QuboModel::add(int r, int c, std::int64_t v) {
    auto& slot = coeff_[tri(r, c)];
    slot = checked_add(slot, v);
}

void QuboModel::set(int r, int c, std::int64_t v) { coeff_[tri(r, c)] = v; }

std::int64_t QuboModel::magnitude() const {
    std::int64_t total = constant_ < 0 ? -constant_ : constant_;
    for (std::int64_t v : coeff_)
        total = checked_add(total, v < 0 ? -v : v);
    return total;
}

QuboModel build_qap_cost(const QapInstance& inst) {
    inst.validate();
    const int n = inst.n;
    VariableLayout layout{n, n, LayoutKind::qap_full};
    QuboModel model(layout);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::int64_t h = inst.flow.at(i, j);
            if (h == 0) continue;
            for (int k = 0; k < n; ++k) {
                const int v1 = layout.index(i, k);
                for (int l = 0; l < n; ++l) {
                    const std::int64_t term = checked_mul(h, inst.dist.at(k, l));
                    if (term == 0) continue;
                    const int v2 = layout.index(j, l);
                    if (v1 <= v2)
                        model.add(v1, v2, term);
                    else
                        model.add(v2, v1, term);
                }
            }
        }
    check_magnitude(model);
    return model;
}

QuboModel build_tsp_cost(const TspInstance& inst) {
    inst.validate();   // symmetry required by the first-city fixing
    const int n = inst.n;
    const int q = n - 1;
    VariableLayout layout{q, q, LayoutKind::tsp_fixed_first};
    QuboModel model(layout);

    // Boundary legs through the fixed city 0 become linear (diagonal) terms:
    // city i at position 1 contributes d(0,i), at position n-1 contributes d(i,0).
    for (int city = 1; city < n; ++city) {
        model.add(layout.index(city - 1, 0), layout.index(city - 1, 0),
                  inst.dist.at(0, city));
        model.add(layout.index(city - 1, q - 1), layout.index(city - 1, q - 1),
                  inst.dist.at(city, 0));
    }

    // Interior legs: ordered city pair (l, i) adjacent at positions (k, k+1).
    for (int l = 1; l < n; ++l)
        for (int i = 1; i < n; ++i) {
            if (l == i) continue;
            const std::int64_t d = inst.dist.at(l, i);
            if (d == 0) continue;
            for (int k = 0; k + 1 < q; ++k) {
                const int v1 = layout.index(l - 1, k);
                const int v2 = layout.index(i - 1, k + 1);
                if (v1 <= v2)
                    model.add(v1, v2, d);
                else
                    model.add(v2, v1, d);
            }
        }
    check_magnitude(model);
    return model;
}

QuboModel build_constraint(const VariableLayout& layout) {
    QuboModel model(layout, layout.rows + layout.cols);
    for (int v = 0; v < layout.m(); ++v) model.add(v, v, -2);
    for (int i = 0; i < layout.rows; ++i)
        for (int k1 = 0; k1 < layout.cols; ++k1)
            for (int k2 = k1 + 1; k2 < layout.cols; ++k2) {
                int a = layout.index(i, k1), b = layout.index(i, k2);
                model.add(std::min(a, b), std::max(a, b), 2);
            }
    for (int k = 0; k < layout.cols; ++k)
        for (int i1 = 0; i1 < layout.rows; ++i1)
            for (int i2 = i1 + 1; i2 < layout.rows; ++i2) {
                int a = layout.index(i1, k), b = layout.index(i2, k);
                model.add(std::min(a, b), std::max(a, b), 2);
            }
    return model;
}

QuboModel combine(const QuboModel& cost, const QuboModel& constraint,
                  std::int64_t alpha) {
    if (cost.m() != constraint.m() || !(cost.layout() == constraint.layout()))
        fail(ErrorCode::argument, "combine needs matching layouts");
    if (alpha < 1) fail(ErrorCode::argument, "penalty weight must be >= 1");
    QuboModel out(cost.layout(),
                  checked_add(cost.constant(),
                              checked_mul(alpha, constraint.constant())));
    for (int r = 0; r < out.m(); ++r)
        for (int c = r; c < out.m(); ++c) {
            std::int64_t v = checked_add(cost.coeff(r, c),
                                         checked_mul(alpha, constraint.coeff(r, c)));
            if (v != 0) out.set(r, c, v);
        }
    check_magnitude(out);
    return out;
}

std::int64_t evaluate(const QuboModel& model, const std::vector<std::uint8_t>& x) {
    if (static_cast<int>(x.size()) != model.m())
        fail(ErrorCode::argument, "bit vector length mismatch");
    std::int64_t e = model.constant();
    for (int r = 0; r < model.m(); ++r) {
        if (!x[r]) continue;
        for (int c = r; c < model.m(); ++c) {
            if (!x[c]) continue;
            e = checked_add(e, model.coeff(r, c));
        }
    }
    return e;
}

EffectiveFields init_fields(const QuboModel& model,
                            const std::vector<std::uint8_t>& x) {
    if (static_cast<int>(x.size()) != model.m())
        fail(ErrorCode::argument, "bit vector length mismatch");
    EffectiveFields f;
    f.x = x;
    f.h.assign(model.m(), 0);
    for (int j = 0; j < model.m(); ++j) {
        std::int64_t h = model.coeff(j, j);
        for (int i = 0; i < model.m(); ++i)
            if (i != j && x[i]) h += model.couple(i, j);
        f.h[j] = h;
    }
    return f;
}

std::int64_t flip_delta(const EffectiveFields& fields, int j) {
    if (j < 0 || j >= static_cast<int>(fields.h.size()))
        fail(ErrorCode::argument, "flip index out of range");
    return (1 - 2 * static_cast<std::int64_t>(fields.x[j])) * fields.h[j];
}

std::int64_t apply_flip(const QuboModel& model, EffectiveFields& fields, int j) {
    const std::int64_t delta = flip_delta(fields, j);
    const std::int64_t sign = fields.x[j] ? -1 : 1;   // new value minus old
    fields.x[j] ^= 1;
    for (int i = 0; i < model.m(); ++i)
        if (i != j) fields.h[i] += sign * model.couple(i, j);
    return delta;
}

std::optional<std::vector<int>> decode(const VariableLayout& layout,
                                       const std::vector<std::uint8_t>& x) {
    if (static_cast<int>(x.size()) != layout.m())
        fail(ErrorCode::argument, "bit vector length mismatch");
    std::vector<int> row_hit(layout.rows, -1), col_hit(layout.cols, -1);
    std::vector<int> row_count(layout.rows, 0), col_count(layout.cols, 0);
    for (int i = 0; i < layout.rows; ++i)
        for (int k = 0; k < layout.cols; ++k) {
            if (!x[layout.index(i, k)]) continue;
            ++row_count[i];
            ++col_count[k];
            row_hit[i] = k;
            col_hit[k] = i;
        }
    for (int i = 0; i < layout.rows; ++i)
        if (row_count[i] != 1) return std::nullopt;
    for (int k = 0; k < layout.cols; ++k)
        if (col_count[k] != 1) return std::nullopt;

    if (layout.kind == LayoutKind::qap_full) {
        return row_hit;   // facility i -> location row_hit[i]
    }
    // Full tour by position: city 0 fixed first, then column k holds city
    // col_hit[k]+1 at tour position k+1.
    std::vector<int> tour(layout.cols + 1);
    tour[0] = 0;
    for (int k = 0; k < layout.cols; ++k) tour[k + 1] = col_hit[k] + 1;
    return tour;
}

std::string to_text(const QuboModel& model) {
    std::ostringstream out;
    out << model.m() << ' ' << model.constant() << "\n";
    for (int r = 0; r < model.m(); ++r)
        for (int c = r; c < model.m(); ++c)
            if (std::int64_t v = model.coeff(r, c); v != 0)
                out << r << ' ' << c << ' ' << v << "\n";
    return out.str();
}

QuboModel from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::int64_t m = 0, constant = 0;
    if (!(in >> m >> constant))
        fail(ErrorCode::parse, "QUBO text needs 'm constant' header");
    if (m <= 0) fail(ErrorCode::parse, "QUBO text has nonpositive m");
    // Layout is not carried by the plain-text format; default to a square
    // qap-full layout when m is a perfect square, else a 1-row layout.
    int side = static_cast<int>(std::llround(std::sqrt(static_cast<double>(m))));
    VariableLayout layout;
    if (static_cast<std::int64_t>(side) * side == m)
        layout = {side, side, LayoutKind::qap_full};
    else
        layout = {1, static_cast<int>(m), LayoutKind::qap_full};
    QuboModel model(layout, constant);
    std::int64_t r, c, v;
    while (in >> r >> c >> v) {
        if (r < 0 || c < r || c >= m)
            fail(ErrorCode::parse, "QUBO triplet out of range");
        model.add(static_cast<int>(r), static_cast<int>(c), v);
    }
    if (!in.eof() && in.fail()) {
        in.clear();
        std::string leftover;
        in >> leftover;
        fail(ErrorCode::parse, "bad QUBO triplet token '" + leftover + "'");
    }
    return model;
}

std::string to_json(const QuboModel& model) {
    nlohmann::json j;
    j["m"] = model.m();
    j["constant"] = model.constant();
    j["layout"] = {
        {"kind", model.layout().kind == LayoutKind::qap_full ? "qap-full"
                                                             : "tsp-fixed-first"},
        {"rows", model.layout().rows},
        {"cols", model.layout().cols},
    };
    auto triplets = nlohmann::json::array();
    for (int r = 0; r < model.m(); ++r)
        for (int c = r; c < model.m(); ++c)
            if (std::int64_t v = model.coeff(r, c); v != 0)
                triplets.push_back({r, c, v});
    j["triplets"] = std::move(triplets);
    return j.dump(2);
}

QuboModel from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse, std::string("bad QUBO JSON: ") + e.what());
    }
    try {
        VariableLayout layout;
        layout.rows = j.at("layout").at("rows").get<int>();
        layout.cols = j.at("layout").at("cols").get<int>();
        const std::string kind = j.at("layout").at("kind").get<std::string>();
        if (kind == "qap-full")
            layout.kind = LayoutKind::qap_full;
        else if (kind == "tsp-fixed-first")
            layout.kind = LayoutKind::tsp_fixed_first;
        else
            fail(ErrorCode::parse, "unknown layout kind '" + kind + "'");
        if (layout.m() != j.at("m").get<std::int64_t>())
            fail(ErrorCode::parse, "layout size disagrees with m");
        QuboModel model(layout, j.at("constant").get<std::int64_t>());
        for (const auto& t : j.at("triplets")) {
            if (!t.is_array() || t.size() != 3)
                fail(ErrorCode::parse, "triplet must be [row, col, value]");
            model.add(t[0].get<int>(), t[1].get<int>(), t[2].get<std::int64_t>());
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::parse, std::string("bad QUBO JSON: ") + e.what());
    }
}

} // namespace permqubo
