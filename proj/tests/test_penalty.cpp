#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/error.hpp"
#include "core/penalty.hpp"
#include "core/qubo.hpp"
#include "test_util.hpp"

using namespace permqubo;
using testutil::data_path;
using testutil::have_file;
using testutil::read_file;

namespace {

QuboModel tiny_cost() { return build_qap_cost(testutil::tiny_qap()); }

QuboModel zero_cost() {
    QapInstance z = testutil::tiny_qap();
    z.flow = SquareMatrix(2);
    return build_qap_cost(z);
}

} // namespace

TEST_CASE("flip bounds of the constraint matrix") {
    for (int n : {2, 3, 5, 8}) {
        VariableLayout layout{n, n, LayoutKind::qap_full};
        QuboModel g = build_constraint(layout);
        FlipBounds b = flip_bounds(g, BoundConvention::incident);
        for (int i = 0; i < g.m(); ++i) {
            CHECK(b.down[i] == 2);
            // every variable has 2(n-1) incident +2 couplings
            CHECK(b.up[i] == -2 + 4 * (n - 1));
        }
    }
}

TEST_CASE("flip bounds of the tiny cost matrix") {
    QuboModel c = tiny_cost();
    FlipBounds b = flip_bounds(c, BoundConvention::incident);
    for (int i = 0; i < 4; ++i) {
        CHECK(b.up[i] == 30);    // single incident coupling of 30
        CHECK(b.down[i] == 0);
    }
    // rowwise: only the row endpoint sees the stored coupling
    FlipBounds br = flip_bounds(c, BoundConvention::rowwise);
    CHECK(br.up[0] == 30);
    CHECK(br.up[3] == 0);
}

TEST_CASE("zero matrix bounds and clamps") {
    QuboModel z = zero_cost();
    FlipBounds b = flip_bounds(z, BoundConvention::incident);
    for (int i = 0; i < 4; ++i) {
        CHECK(b.down[i] == 0);
        CHECK(b.up[i] == 0);
    }
    CHECK(ub(z) == 1);
    CHECK(mqc(z) == 1);
    CHECK(vlm(z, BoundConvention::incident) == 1);
    QuboModel g = build_constraint(z.layout());
    CHECK(momc(z, g, BoundConvention::incident) == 1);
    CHECK(moc(z, g, BoundConvention::incident) == 1);
}

TEST_CASE("tiny example methods") {
    QuboModel c = tiny_cost();
    QuboModel g = build_constraint(c.layout());
    CHECK(mqc(c) == 30);
    CHECK(vlm(c, BoundConvention::incident) == 30);
    CHECK(vlm(c, BoundConvention::rowwise) == 30);
    CHECK(gamma(g, BoundConvention::incident) == 2);
    CHECK(momc(c, g, BoundConvention::incident) == 15);
    CHECK(moc(c, g, BoundConvention::incident) == 15);   // 30 / (−2+4·1)
}

TEST_CASE("gamma needs a positive bound") {
    QuboModel z = zero_cost();
    CHECK_THROWS_AS(gamma(z, BoundConvention::incident), Error);
}

TEST_CASE("gamma scales with the constraint matrix") {
    VariableLayout layout{3, 3, LayoutKind::qap_full};
    QuboModel g = build_constraint(layout);
    CHECK(gamma(g, BoundConvention::incident) == 2);
    // scaled by 3 via combine with a zero cost
    QuboModel zero(layout);
    QuboModel g3 = combine(zero, g, 3);
    CHECK(gamma(g3, BoundConvention::incident) == 6);
}

TEST_CASE("had12 reproduces the published weight row") {
    if (!have_file(data_path("had12.dat"))) {
        FAIL("had12.dat fixture missing");
        return;
    }
    QapInstance inst = parse_qaplib(read_file(data_path("had12.dat")), "had12");
    QuboModel c = build_qap_cost(inst);
    QuboModel g = build_constraint(c.layout());
    PenaltyReport r = all_weights(c, g);
    CHECK(r.table.ub == 249240);
    CHECK(r.table.mqc == 126);
    CHECK(r.table.vlm == 5460);
    CHECK(r.table.momc == 2730);
    CHECK(r.table.moc == 488);
    CHECK(r.gamma == 2);
    // constant of the combined model is 2n*alpha
    for (std::int64_t alpha : {1, 126, 488})
        CHECK(combine(c, g, alpha).constant() == 24 * alpha);
}

TEST_CASE("method ordering holds on every bundled instance") {
    struct Spec {
        const char* file;
        bool tsp;
    };
    for (const Spec& s : {Spec{"had12.dat", false}, Spec{"gr17.tsp", true},
                          Spec{"berlin52.tsp", true}, Spec{"st70.tsp", true}}) {
        if (!have_file(data_path(s.file))) continue;
        QuboModel c;
        if (s.tsp)
            c = build_tsp_cost(parse_tsplib(read_file(data_path(s.file))));
        else
            c = build_qap_cost(parse_qaplib(read_file(data_path(s.file)), s.file));
        QuboModel g = build_constraint(c.layout());
        PenaltyReport r = all_weights(c, g);
        for (const MethodValues* v : {&r.table, &r.invariant}) {
            CHECK(v->mqc <= v->vlm);
            CHECK(v->moc <= v->momc);
            CHECK(v->momc <= v->vlm);
            CHECK(v->vlm <= v->ub);
            CHECK(v->ub >= 1);
        }
        CHECK(r.gamma == 2);
        CHECK(r.table.momc == (r.table.vlm + r.gamma - 1) / r.gamma);
        CHECK(r.invariant.momc == (r.invariant.vlm + 1) / 2);
        // down bounds of the constraint are 2 everywhere and pair positive
        for (std::int64_t d : r.bounds_g_incident.down) CHECK(d == 2);
    }
}

TEST_CASE("scale equivariance of the methods") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto inst = random_instance(ProblemKind::qap, 4, seed, 9);
        QapInstance base = std::get<QapInstance>(inst);
        QapInstance scaled = base;
        const std::int64_t s = 5;
        for (int r = 0; r < base.n; ++r)
            for (int c = 0; c < base.n; ++c)
                scaled.flow.at(r, c) *= s;
        QuboModel c1 = build_qap_cost(base);
        QuboModel cs = build_qap_cost(scaled);
        QuboModel g = build_constraint(c1.layout());
        // exact scaling before clamping
        if (ub(c1) > 1) CHECK(ub(cs) == s * ub(c1));
        if (mqc(c1) > 1) CHECK(mqc(cs) == s * mqc(c1));
        for (auto conv : {BoundConvention::incident, BoundConvention::rowwise}) {
            if (vlm(c1, conv) > 1) CHECK(vlm(cs, conv) == s * vlm(c1, conv));
            // ceiling slack below one unit of s
            std::int64_t m1 = momc(c1, g, conv), ms = momc(cs, g, conv);
            CHECK(ms >= s * (m1 - 1));
            CHECK(ms <= s * m1);
        }
    }
}

TEST_CASE("momc equals ceil(vlm/gamma) as an identity") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto inst = random_instance(ProblemKind::qap, 3, seed, 9);
        QuboModel c = build_qap_cost(std::get<QapInstance>(inst));
        QuboModel g = build_constraint(c.layout());
        for (auto conv : {BoundConvention::incident, BoundConvention::rowwise}) {
            std::int64_t v = vlm(c, conv), gm = gamma(g, conv);
            CHECK(momc(c, g, conv) == std::max<std::int64_t>(1, (v + gm - 1) / gm));
        }
    }
}

TEST_CASE("report serializations carry both conventions") {
    QuboModel c = tiny_cost();
    QuboModel g = build_constraint(c.layout());
    PenaltyReport r = all_weights(c, g);
    std::string json = report_to_json(r);
    CHECK(json.find("\"table\"") != std::string::npos);
    CHECK(json.find("\"invariant\"") != std::string::npos);
    std::string table = report_to_table(r);
    CHECK(table.find("MOC") != std::string::npos);
}
