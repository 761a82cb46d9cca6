#include <catch2/catch_amalgamated.hpp>

#include "cutpoly/instances.hpp"
#include "cutpoly/lp/dual.hpp"
#include "cutpoly/lp/json.hpp"
#include "cutpoly/lp/model.hpp"
#include "cutpoly/lp/simplex.hpp"
#include "cutpoly/relaxations.hpp"

using namespace cutpoly;
using namespace cutpoly::lp;

TEST_CASE("one-variable LP with dual") {
    Model<Rat> m;
    int x = m.add_variable("x");
    m.add_row("r", {{x, Rat(1)}}, RowSense::GE, Rat(3));
    m.set_objective(ObjSense::Minimize, {{x, Rat(1)}});
    m.seal();
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == 3);
    CHECK(sol.primal[0] == 3);
    CHECK(sol.dual[0] == 1);

    auto cert = dual_rows(m, sol);
    REQUIRE(cert.y.size() == 1);
    CHECK(cert.y[0] == 1);
    CHECK(cert.y_dot_b == 3);
}

TEST_CASE("two-phase equality handling") {
    Model<Rat> m;
    int x = m.add_variable("x");
    int y = m.add_variable("y");
    m.add_row("sum", {{x, Rat(1)}, {y, Rat(1)}}, RowSense::EQ, Rat(2));
    m.add_row("diff", {{x, Rat(1)}, {y, Rat(-1)}}, RowSense::EQ, Rat(0));
    m.set_objective(ObjSense::Minimize, {{x, Rat(1)}, {y, Rat(3)}});
    m.seal();
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal[0] == 1);
    CHECK(sol.primal[1] == 1);
    CHECK(sol.objective == 4);
    // strong duality on equality rows
    CHECK(sol.dual[0] * 2 + sol.dual[1] * 0 == 4);
}

TEST_CASE("infeasible and unbounded detection") {
    Model<Rat> m;
    int x = m.add_variable("x");
    m.add_row("lo", {{x, Rat(1)}}, RowSense::GE, Rat(3));
    m.add_row("hi", {{x, Rat(1)}}, RowSense::LE, Rat(1));
    m.set_objective(ObjSense::Minimize, {{x, Rat(1)}});
    m.seal();
    CHECK(solve(m).status == SolveStatus::Infeasible);

    Model<Rat> u;
    int z = u.add_variable("z");
    u.add_row("lo", {{z, Rat(1)}}, RowSense::GE, Rat(1));
    u.set_objective(ObjSense::Maximize, {{z, Rat(1)}});
    u.seal();
    CHECK(solve(u).status == SolveStatus::Unbounded);
}

TEST_CASE("variable upper bounds and maximize duals") {
    Model<Rat> m;
    int x = m.add_variable("x", Rat(5));
    m.set_objective(ObjSense::Maximize, {{x, Rat(2)}});
    m.seal();
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.primal[0] == 5);
    CHECK(sol.objective == 10);

    Model<Rat> m2;
    int a = m2.add_variable("a");
    m2.add_row("cap", {{a, Rat(1)}}, RowSense::LE, Rat(4));
    m2.set_objective(ObjSense::Maximize, {{a, Rat(3)}});
    m2.seal();
    auto s2 = solve(m2);
    CHECK(s2.objective == 12);
    CHECK(s2.dual[0] == 3);  // max problem: LE row dual >= 0
}

TEST_CASE("maximize with equality rows") {
    Model<Rat> m;
    int x = m.add_variable("x");
    int y = m.add_variable("y");
    m.add_row("budget", {{x, Rat(1)}, {y, Rat(1)}}, RowSense::EQ, Rat(5));
    m.set_objective(ObjSense::Maximize, {{x, Rat(2)}, {y, Rat(1)}});
    m.seal();
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == 10);  // x = 5
    CHECK(sol.dual[0] * 5 == sol.objective);
}

TEST_CASE("redundant rows are tolerated") {
    Model<Rat> m;
    int x = m.add_variable("x");
    int y = m.add_variable("y");
    m.add_row("r1", {{x, Rat(1)}, {y, Rat(1)}}, RowSense::EQ, Rat(2));
    m.add_row("r2", {{x, Rat(2)}, {y, Rat(2)}}, RowSense::EQ, Rat(4));
    m.set_objective(ObjSense::Minimize, {{x, Rat(1)}, {y, Rat(2)}});
    m.seal();
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == 2);
}

TEST_CASE("negative rhs rows normalize correctly") {
    // -x <= -3  (x >= 3), -x >= -5 (x <= 5)
    Model<Rat> m;
    int x = m.add_variable("x");
    m.add_row("lo", {{x, Rat(-1)}}, RowSense::LE, Rat(-3));
    m.add_row("hi", {{x, Rat(-1)}}, RowSense::GE, Rat(-5));
    m.set_objective(ObjSense::Minimize, {{x, Rat(1)}});
    m.seal();
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == 3);
    CHECK(sol.dual[0] * Rat(-3) + sol.dual[1] * Rat(-5) == 3);
}

TEST_CASE("dual signs per row sense on a mixed model") {
    // min 2x + 3y  s.t. x + y >= 4 (GE), x <= 10 (LE), y = 1 (EQ)
    Model<Rat> m;
    int x = m.add_variable("x");
    int y = m.add_variable("y");
    m.add_row("ge", {{x, Rat(1)}, {y, Rat(1)}}, RowSense::GE, Rat(4));
    m.add_row("le", {{x, Rat(1)}}, RowSense::LE, Rat(10));
    m.add_row("eq", {{y, Rat(1)}}, RowSense::EQ, Rat(1));
    m.set_objective(ObjSense::Minimize, {{x, Rat(2)}, {y, Rat(3)}});
    m.seal();
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    CHECK(sol.objective == 9);  // x=3, y=1
    CHECK(sol.dual[0] >= 0);
    CHECK(sol.dual[1] <= 0);
    CHECK(sol.dual[0] * 4 + sol.dual[1] * 10 + sol.dual[2] * 1 == 9);
}

TEST_CASE("exact strong duality on relaxation models") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        int n = rng.uniform_int(4, 6);
        auto c = random_cost_vector(n, 0.6, rng);
        if (c.support_size() == 0) continue;
        Model<Rat> m;
        switch (trial % 3) {
            case 0: m = build_alpha_lp(c, AlphaParams{Rat(rng.uniform_int(1, n / 2)),
                                                      AlphaVariant::New}); break;
            case 1: m = build_alpha_lp(c, AlphaParams{Rat(rng.uniform_int(1, n / 2)),
                                                      AlphaVariant::Old}); break;
            default: m = build_auxiliary_lp(AuxKind::StCut, c, 1, n); break;
        }
        auto sol = solve(m);
        REQUIRE(sol.status == SolveStatus::Optimal);
        Rat ydotb;
        for (std::size_t i = 0; i < m.rows().size(); ++i)
            ydotb += sol.dual[i] * m.rows()[i].rhs;
        REQUIRE(ydotb == sol.objective);  // exact, no tolerance
        // dual sign conventions
        for (std::size_t i = 0; i < m.rows().size(); ++i) {
            if (m.rows()[i].sense == RowSense::GE) CHECK(sol.dual[i] >= 0);
            if (m.rows()[i].sense == RowSense::LE) CHECK(sol.dual[i] <= 0);
        }
        // dual_rows certifies y.A <= c and y.b = objective
        auto cert = dual_rows(m, sol);
        CHECK(cert.y_dot_b == sol.objective);
    }
}

TEST_CASE("beta-LP dual on a Hamilton cycle closes the gap at 2") {
    auto c = incidence_of_cycle<Rat>(HamCycle::canonical(8));
    BetaParams p;
    p.beta1 = 2;
    p.beta2 = 3;
    auto m = build_beta_lp(c, p);
    auto sol = solve(m);
    REQUIRE(sol.status == SolveStatus::Optimal);
    REQUIRE(sol.objective == 2);
    auto cert = dual_rows(m, sol);
    CHECK(cert.y_dot_b == 2);  // zero duality gap, exactly
}

TEST_CASE("re-solving a sealed model is deterministic") {
    auto c = incidence_of_cycle<Rat>(HamCycle::canonical(7));
    auto m = build_alpha_lp(c, AlphaParams{Rat(3), AlphaVariant::New});
    auto s1 = solve(m);
    auto s2 = solve(m);
    REQUIRE(s1.status == SolveStatus::Optimal);
    CHECK(s1.objective == s2.objective);
    CHECK(s1.pivots == s2.pivots);
    CHECK(s1.basis_sequence == s2.basis_sequence);  // identical pivot sequence
}

TEST_CASE("float backend agrees with exact within 1e-7 on 100 random models") {
    Rng rng(23);
    int done = 0;
    while (done < 100) {
        int n = rng.uniform_int(4, 8);
        auto c = random_cost_vector(n, n <= 6 ? 0.6 : 0.4, rng);
        if (c.support_size() < 2) continue;
        auto cf = convert_cost<double>(c);
        Rat exact_obj;
        double float_obj = 0;
        switch (done % 4) {
            case 0: {
                int a = rng.uniform_int(1, n / 2);
                exact_obj = solve(build_alpha_lp(c, AlphaParams{Rat(a), AlphaVariant::New})).objective;
                float_obj =
                    solve(build_alpha_lp(cf, AlphaParams{Rat(a), AlphaVariant::New})).objective;
                break;
            }
            case 1: {
                BetaParams p;
                p.beta1 = std::max(1, n / 2 - 1);
                p.beta2 = p.beta1 + 1;
                exact_obj = solve(build_beta_lp(c, p)).objective;
                float_obj = solve(build_beta_lp(cf, p)).objective;
                break;
            }
            case 2: {
                exact_obj = solve(build_auxiliary_lp(AuxKind::StCut, c, 1, n)).objective;
                float_obj = solve(build_auxiliary_lp(AuxKind::StCut, cf, 1, n)).objective;
                break;
            }
            default: {
                exact_obj = solve(build_auxiliary_lp(AuxKind::SmallWLP, c)).objective;
                float_obj = solve(build_auxiliary_lp(AuxKind::SmallWLP, cf)).objective;
                break;
            }
        }
        REQUIRE_THAT(float_obj, Catch::Matchers::WithinAbs(to_double(exact_obj), 1e-7));
        ++done;
    }
}

TEST_CASE("iteration limit reports a solver failure") {
    auto c = incidence_of_cycle<Rat>(HamCycle::canonical(6));
    auto m = build_alpha_lp(c, AlphaParams{Rat(2), AlphaVariant::New});
    SolveOptions opts;
    opts.max_iters = 1;
    CHECK_THROWS_AS(solve(m, opts), Error);
}

TEST_CASE("model JSON round trip is exact for rational data") {
    auto c = incidence_of_cycle<Rat>(HamCycle::canonical(5));
    c.set(1, 3, Rat(1, 3));
    auto m = build_alpha_lp(c, AlphaParams{Rat(2), AlphaVariant::New});
    auto j = model_to_json(m);
    auto back = model_from_json<Rat>(j);
    REQUIRE(back.num_rows() == m.num_rows());
    REQUIRE(back.num_cols() == m.num_cols());
    for (int i = 0; i < m.num_rows(); ++i) {
        CHECK(back.rows()[static_cast<std::size_t>(i)].rhs ==
              m.rows()[static_cast<std::size_t>(i)].rhs);
        CHECK(back.rows()[static_cast<std::size_t>(i)].sense ==
              m.rows()[static_cast<std::size_t>(i)].sense);
    }
    CHECK(model_to_json(back) == j);  // canonical serialization is stable
    CHECK(solve(back).objective == solve(m).objective);
    CHECK(back.meta().tag == "alpha");
}

TEST_CASE("model validation") {
    Model<Rat> m;
    m.add_variable("x");
    CHECK_THROWS_AS(m.add_variable("x"), Error);
    CHECK_THROWS_AS(m.add_row("bad", {{5, Rat(1)}}, RowSense::LE, Rat(1)), Error);
    m.seal();
    CHECK_THROWS_AS(m.add_variable("y"), Error);
    Model<Rat> unsealed;
    unsealed.add_variable("x");
    CHECK_THROWS_AS(solve(unsealed), Error);
}
