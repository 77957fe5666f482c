#include <functional>
#include <stdexcept>
#include <cmath>
#include <random>

#include "doctest.h"
#include "msd/protocol.hpp"

using namespace msd;

namespace {
const EvalOptions kDefault{0.01, false, 0.05};
}

TEST_CASE("print and parse round trip") {
    std::vector<std::string> cases = {
        "eps0",
        "BK(eps0)",
        "MEK(MEK(eps0))",
        "BH[40](BK(eps0))",
        "H1[6](BK(eps0),eps0)",
        "ML[2][24](BH[40](BK(eps0)),BK(eps0))",
        "ML[3][16](ML[2][10](MEK(MEK(eps0)),MEK(eps0)),MEK(MEK(eps0)))",
    };
    for (const std::string& text : cases) {
        ExprPtr e = parse_expr(text);
        CHECK(print_expr(*e) == text);
        CHECK(expr_equal(*parse_expr(print_expr(*e)), *e));
    }
}

TEST_CASE("random expressions round trip") {
    std::mt19937 rng(31337);
    std::function<ExprPtr(int)> gen = [&](int depth) -> ExprPtr {
        if (depth <= 0 || rng() % 4 == 0) return ProtocolExpr::source();
        switch (rng() % 5) {
            case 0: return ProtocolExpr::bk(gen(depth - 1));
            case 1: return ProtocolExpr::mek(gen(depth - 1));
            case 2: return ProtocolExpr::bh(2 * (1 + static_cast<int>(rng() % 20)), gen(depth - 1));
            case 3:
                return ProtocolExpr::h1(2 * (1 + static_cast<int>(rng() % 10)), gen(depth - 1),
                                        gen(depth - 1));
            default:
                return ProtocolExpr::ml(2 + static_cast<int>(rng() % 3),
                                        2 * (1 + static_cast<int>(rng() % 10)), gen(depth - 1),
                                        gen(depth - 1));
        }
    };
    for (int trial = 0; trial < 100; ++trial) {
        ExprPtr e = gen(4);
        ExprPtr back = parse_expr(print_expr(*e));
        CHECK(expr_equal(*e, *back));
        CHECK(back->depth == e->depth);
    }
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_expr("BK(eps0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("XX(eps0)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("BK(eps0))"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("ML[2](eps0,eps0)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("BH[3](eps0)"), std::invalid_argument);  // odd k
}

TEST_CASE("depth counts rounds from the source") {
    CHECK(ProtocolExpr::source()->depth == 0);
    CHECK(parse_expr("BK(eps0)")->depth == 1);
    CHECK(parse_expr("ML[2][24](BH[40](BK(eps0)),BK(eps0))")->depth == 3);
    CHECK(parse_expr("ML[3][28](ML[2][28](ML[2][28](ML[2][14](BK(eps0),MEK(eps0)),BK(eps0)),"
                     "BH[40](BK(eps0))),BH[40](BK(eps0)))")
              ->depth == 5);
}

TEST_CASE("table row evaluations") {
    // Row 4: one 15-to-1 round.
    ProtocolEval bk = evaluate(*parse_expr("BK(eps0)"), kDefault);
    CHECK(-std::log10(bk.eps_out) == doctest::Approx(4.46).epsilon(0.005));
    CHECK(bk.cost == doctest::Approx(17.44).epsilon(0.001));

    // Row 5 numbers, via the 10-to-2 composition (the table's label names a
    // different expression whose numbers do not reproduce).
    ProtocolEval mek2 = evaluate(*parse_expr("MEK(MEK(eps0))"), kDefault);
    CHECK(-std::log10(mek2.eps_out) == doctest::Approx(5.14).epsilon(0.004));
    CHECK(mek2.cost == doctest::Approx(27.93).epsilon(0.02));

    // Row 6: triorthogonal k=40 on 15-to-1 outputs.
    ProtocolEval bh = evaluate(*parse_expr("BH[40](BK(eps0))"), kDefault);
    CHECK(-std::log10(bh.eps_out) == doctest::Approx(6.83).epsilon(0.008));
    CHECK(bh.cost == doctest::Approx(56.07).epsilon(0.01));

    // Row 10: the 24x24 two-level block.
    ProtocolEval ml = evaluate(*parse_expr("ML[2][24](BH[40](BK(eps0)),BK(eps0))"), kDefault);
    CHECK(-std::log10(ml.eps_out) == doctest::Approx(11.05).epsilon(0.01));
    CHECK(ml.cost == doctest::Approx(110.7).epsilon(0.01));

    // The labelled expression for row 5 lands elsewhere.
    ProtocolEval mek_bk = evaluate(*parse_expr("MEK(BK(eps0))"), kDefault);
    CHECK(-std::log10(mek_bk.eps_out) > 7.5);
    CHECK(mek_bk.cost > 80);
}

TEST_CASE("source and domain handling") {
    ProtocolEval src = evaluate(*ProtocolExpr::source(), kDefault);
    CHECK(src.eps_out == 0.01);
    CHECK(src.cost == 1.0);
    CHECK(src.accept == 1.0);

    EvalOptions bad = kDefault;
    bad.eps0 = 0.2;
    CHECK_THROWS_AS(evaluate(*parse_expr("BK(eps0)"), bad), std::domain_error);
    bad.eps0 = 0.0;
    CHECK_THROWS_AS(evaluate(*ProtocolExpr::source(), bad), std::domain_error);

    // BH at eps0=0.05 produces eps > 0.05, so feeding it onward is out of
    // the model domain.
    EvalOptions edge = kDefault;
    edge.eps0 = 0.05;
    CHECK_NOTHROW(evaluate(*parse_expr("BH[40](eps0)"), edge));
    CHECK_THROWS_AS(evaluate(*parse_expr("BK(BH[40](eps0))"), edge), std::domain_error);
}

TEST_CASE("full prior polynomials shift the outputs slightly") {
    EvalOptions full = kDefault;
    full.full_prior_polys = true;
    double lead = evaluate(*parse_expr("BK(eps0)"), kDefault).eps_out;
    double with_tail = evaluate(*parse_expr("BK(eps0)"), full).eps_out;
    CHECK(with_tail > lead);
    CHECK(with_tail == doctest::Approx(35e-6 * (1 + 3e-2 + 378.0 / 35 * 1e-4)).epsilon(1e-6));
}
