#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "msd/error_models.hpp"

using namespace msd;

TEST_CASE("level-1 polynomial") {
    ErrorPoly2 p = level1_error_poly(2);
    CHECK(p.coefficient(2, 0) == 1);
    CHECK(p.coefficient(0, 2) == 6);
    CHECK(p.coefficient(0, 3) == 4);
    CHECK(p.coefficient(1, 2) == 6);
    CHECK(p.coefficient(1, 3) == 8);
    CHECK(p.coefficient(4, 0) == 0);  // vanishes below k = 4
    CHECK(p.eval(0, 0) == 0);

    CHECK(level1_error_poly(6).coefficient(4, 0) == doctest::Approx(10.0));  // C(5,3)

    // Equal arguments: leading order (3k+1) eps^2.
    for (int k : {2, 8, 20}) {
        double e = 1e-6;
        CHECK(level1_error_poly(k).eval(e, e) ==
              doctest::Approx((3 * k + 1) * e * e).epsilon(1e-3));
    }

    CHECK_THROWS_AS(level1_error_poly(3), std::invalid_argument);
    CHECK_THROWS_AS(level1_error_poly(0), std::invalid_argument);
}

TEST_CASE("level-2 polynomial") {
    ErrorPoly2 p = level2_error_poly(2);
    CHECK(p.coefficient(2, 0) == 3);
    CHECK(p.coefficient(0, 4) == 120);
    CHECK(p.coefficient(1, 2) == 36);

    // Physical errors off: only the logical-pair term.
    double e = 1e-4;
    CHECK(level2_error_poly(6).eval(e, 0) == doctest::Approx(35 * e * e));

    // Table row 10: k = 20 block at the BH40(BK), BK operating point.
    double val = level2_error_poly(20).eval(1.482e-7, 3.5e-5);
    CHECK(-std::log10(val) == doctest::Approx(11.05).epsilon(0.002));
}

TEST_CASE("multilevel polynomial") {
    for (int k = 2; k <= 20; k += 2)
        CHECK(multilevel_error_poly(k, 2) == level2_error_poly(k));

    ErrorPoly2 p3 = multilevel_error_poly(2, 3);
    CHECK(p3.coefficient(0, 8) == doctest::Approx(19200.0));  // 2^8 * 3 * 25
    CHECK(p3.coefficient(2, 0) == 7);
    CHECK(p3.coefficient(1, 4) == doctest::Approx(std::pow(6.0, 6)));
    CHECK(p3.eval(0, 0) == 0);

    CHECK_THROWS_AS(multilevel_error_poly(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(multilevel_error_poly(2, 5), std::invalid_argument);
}

TEST_CASE("polynomials are monotone on the model domain") {
    for (int k : {2, 10, 20}) {
        for (const ErrorPoly2& p : {level1_error_poly(k), level2_error_poly(k),
                                    multilevel_error_poly(k, 3)}) {
            double prev = -1;
            for (int i = 0; i <= 20; ++i) {
                double e = 0.05 * i / 20;
                double v = p.eval(e, e);
                CHECK(v >= prev);
                prev = v;
            }
        }
    }
    // MEK's negative cubic term: monotone on the restricted domain.
    ErrorPoly2 mek = mek_error_poly(true);
    double prev = -1;
    for (int i = 0; i <= 20; ++i) {
        double e = 0.02 * i / 20;
        double v = mek.eval(e, 0);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("acceptance probability") {
    ProtocolSpec bk{ProtocolKind::BK, 0, 0};
    double p = acceptance_probability(bk, 0.01, 0);
    CHECK(p == doctest::Approx(0.86006).epsilon(1e-4));
    CHECK(15.0 / p == doctest::Approx(17.44).epsilon(1e-3));

    ProtocolSpec bh40{ProtocolKind::BH, 40, 0};
    CHECK(bh40.inputs_logical() == 128);
    CHECK(acceptance_probability(bh40, 3.5e-5, 0) == doctest::Approx(0.99553).epsilon(1e-4));

    ProtocolSpec ml2{ProtocolKind::ML, 20, 2};
    CHECK(ml2.inputs_logical() == 400);
    CHECK(ml2.inputs_physical() == 1152);
    CHECK(ml2.outputs() == 400);
    CHECK(acceptance_probability(ml2, 0, 0) == 1.0);

    // Strictly decreasing in each argument.
    double prev = 2;
    for (int i = 0; i <= 10; ++i) {
        double v = acceptance_probability(ml2, 0.005 * i / 10, 1e-3);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(acceptance_probability(bk, 0.2, 0), std::domain_error);
}

TEST_CASE("prior protocol polynomials") {
    CHECK(bk_error_poly().eval(0.01, 0) == doctest::Approx(3.5e-5));
    CHECK(-std::log10(bk_error_poly().eval(0.01, 0)) == doctest::Approx(4.46).epsilon(0.005));

    double mek1 = mek_error_poly().eval(0.01, 0);
    double mek2 = mek_error_poly().eval(mek1, 0);
    CHECK(mek2 == doctest::Approx(7.29e-6));
    CHECK(-std::log10(mek2) == doctest::Approx(5.14).epsilon(0.005));

    // BH matches the one-level H function at leading order.
    for (int k : {2, 10, 40}) {
        double e = 1e-5;
        CHECK(bh_error_poly(k).eval(e, 0) ==
              doctest::Approx(level1_error_poly(k).eval(e, e)).epsilon(1e-2));
    }

    CHECK(bk_error_poly(true).coefficient(4, 0) == 105);
    CHECK(bk_error_poly(true).coefficient(5, 0) == 378);
    CHECK(mek_error_poly(true).coefficient(3, 0) == -56);
}

TEST_CASE("polynomial json export") {
    ErrorPoly2 p = level2_error_poly(2);
    CHECK(p.to_json() == "{\"terms\":[[0,4,120],[1,2,36],[2,0,3]]}");
    ErrorPoly2 empty;
    CHECK(empty.to_json() == "{\"terms\":[]}");
}

TEST_CASE("protocol spec counts") {
    CHECK(ProtocolSpec{ProtocolKind::BK, 0, 0}.inputs_logical() == 15);
    CHECK(ProtocolSpec{ProtocolKind::MEK, 0, 0}.inputs_logical() == 10);
    CHECK(ProtocolSpec{ProtocolKind::MEK, 0, 0}.outputs() == 2);
    CHECK(ProtocolSpec{ProtocolKind::BH, 40, 0}.outputs() == 40);
    ProtocolSpec h1{ProtocolKind::H1, 6, 1};
    CHECK(h1.inputs_logical() == 6);
    CHECK(h1.inputs_physical() == 20);
    ProtocolSpec ml3{ProtocolKind::ML, 2, 3};
    CHECK(ml3.inputs_logical() == 8);
    CHECK(ml3.inputs_physical() == 4 * 6 * 6 * 6);
    CHECK(ml3.outputs() == 8);
}
