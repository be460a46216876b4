#include "penalty.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "checked.hpp"
#include "error.hpp"

namespace permqubo {

FlipBounds flip_bounds(const QuboModel& model, BoundConvention conv) {
    const int m = model.m();
    std::vector<std::int64_t> pos(m, 0), neg(m, 0);
    for (int r = 0; r < m; ++r)
        for (int c = r + 1; c < m; ++c) {
            const std::int64_t v = model.coeff(r, c);
            if (v == 0) continue;
            if (v > 0) {
                pos[r] = checked_add(pos[r], v);
                if (conv == BoundConvention::incident)
                    pos[c] = checked_add(pos[c], v);
            } else {
                neg[r] = checked_add(neg[r], v);
                if (conv == BoundConvention::incident)
                    neg[c] = checked_add(neg[c], v);
            }
        }
    FlipBounds b;
    b.down.resize(m);
    b.up.resize(m);
    for (int i = 0; i < m; ++i) {
        const std::int64_t diag = model.coeff(i, i);
        b.down[i] = checked_add(-diag, -neg[i]);
        b.up[i] = checked_add(diag, pos[i]);
    }
    return b;
}

std::int64_t ub(const QuboModel& cost) {
    std::int64_t total = cost.constant();
    for (int r = 0; r < cost.m(); ++r)
        for (int c = r; c < cost.m(); ++c)
            total = checked_add(total, cost.coeff(r, c));
    return std::max<std::int64_t>(1, total);
}

std::int64_t mqc(const QuboModel& cost) {
    std::int64_t best = 0;
    for (int r = 0; r < cost.m(); ++r)
        for (int c = r; c < cost.m(); ++c)
            best = std::max(best, cost.coeff(r, c));
    return std::max<std::int64_t>(1, best);
}

std::int64_t vlm(const QuboModel& cost, BoundConvention conv) {
    const FlipBounds b = flip_bounds(cost, conv);
    std::int64_t best = 0;
    for (std::int64_t v : b.down) best = std::max(best, v);
    for (std::int64_t v : b.up) best = std::max(best, v);
    return std::max<std::int64_t>(1, best);
}

std::int64_t gamma(const QuboModel& constraint, BoundConvention conv) {
    const FlipBounds b = flip_bounds(constraint, conv);
    std::int64_t best = 0;
    for (std::int64_t v : b.down)
        if (v > 0 && (best == 0 || v < best)) best = v;
    for (std::int64_t v : b.up)
        if (v > 0 && (best == 0 || v < best)) best = v;
    if (best == 0)
        fail(ErrorCode::method,
             "degenerate constraint matrix: no positive flip bound");
    return best;
}

std::int64_t momc(const QuboModel& cost, const QuboModel& constraint,
                  BoundConvention conv) {
    const std::int64_t g = gamma(constraint, conv);
    return std::max<std::int64_t>(1, ceil_div(vlm(cost, conv), g));
}

std::int64_t moc(const QuboModel& cost, const QuboModel& constraint,
                 BoundConvention conv) {
    if (cost.m() != constraint.m())
        fail(ErrorCode::argument, "moc needs matching dimensions");
    const FlipBounds bc = flip_bounds(cost, conv);
    const FlipBounds bg = flip_bounds(constraint, conv);
    bool any = false;
    std::int64_t best = 0;
    auto fold = [&](std::int64_t wc, std::int64_t wg) {
        if (wg <= 0) return;           // Eq condition: constraint bound > 0
        any = true;
        best = std::max(best, ceil_div(wc < 0 ? -wc : wc, wg));
    };
    for (int i = 0; i < cost.m(); ++i) {
        fold(bc.down[i], bg.down[i]);
        fold(bc.up[i], bg.up[i]);
    }
    if (!any)
        fail(ErrorCode::method,
             "degenerate constraint matrix: no positive flip bound");
    return std::max<std::int64_t>(1, best);
}

PenaltyReport all_weights(const QuboModel& cost, const QuboModel& constraint) {
    PenaltyReport r;
    r.table.ub = r.invariant.ub = ub(cost);
    r.table.mqc = r.invariant.mqc = mqc(cost);
    r.table.vlm = vlm(cost, BoundConvention::rowwise);
    r.table.momc = momc(cost, constraint, BoundConvention::rowwise);
    r.table.moc = moc(cost, constraint, BoundConvention::rowwise);
    r.invariant.vlm = vlm(cost, BoundConvention::incident);
    r.invariant.momc = momc(cost, constraint, BoundConvention::incident);
    r.invariant.moc = moc(cost, constraint, BoundConvention::incident);
    r.gamma = gamma(constraint, BoundConvention::rowwise);
    r.bounds_c = flip_bounds(cost, BoundConvention::rowwise);
    r.bounds_g = flip_bounds(constraint, BoundConvention::rowwise);
    r.bounds_c_incident = flip_bounds(cost, BoundConvention::incident);
    r.bounds_g_incident = flip_bounds(constraint, BoundConvention::incident);
    return r;
}

namespace {

nlohmann::json values_to_json(const MethodValues& v) {
    return {{"ub", v.ub}, {"mqc", v.mqc}, {"vlm", v.vlm},
            {"momc", v.momc}, {"moc", v.moc}};
}

} // namespace

std::string report_to_json(const PenaltyReport& report) {
    nlohmann::json j;
    j["table"] = values_to_json(report.table);
    j["invariant"] = values_to_json(report.invariant);
    j["gamma"] = report.gamma;
    return j.dump(2);
}

std::string report_to_table(const PenaltyReport& report) {
    std::ostringstream out;
    auto row = [&](const char* label, std::int64_t t, std::int64_t i) {
        out << std::left << std::setw(6) << label << std::right
            << std::setw(18) << t << std::setw(18) << i << "\n";
    };
    out << std::left << std::setw(6) << "method" << std::right
        << std::setw(18) << "table" << std::setw(18) << "invariant" << "\n";
    row("UB", report.table.ub, report.invariant.ub);
    row("MQC", report.table.mqc, report.invariant.mqc);
    row("VLM", report.table.vlm, report.invariant.vlm);
    row("MOMC", report.table.momc, report.invariant.momc);
    row("MOC", report.table.moc, report.invariant.moc);
    out << "gamma " << std::setw(18) << report.gamma << "\n";
    return out.str();
}

} // namespace permqubo
