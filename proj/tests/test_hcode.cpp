#include <stdexcept>
#include "doctest.h"
#include "msd/hcode.hpp"

using namespace msd;

TEST_CASE("h6 structure") {
    StabilizerCode code = build_hcode(6);
    CHECK(code.k == 2);
    CHECK(code.stabilizers[2] == PauliString::from_x(6, {0, 1, 4, 5}));
    CHECK(code.logical_x[0] == PauliString::from_x(6, {0, 2, 4}));
    CHECK(in_group(PauliString(6), code.stabilizers));
}

TEST_CASE("h10 logicals") {
    StabilizerCode code = build_hcode(10);
    CHECK(code.k == 6);
    for (const PauliString& lx : code.logical_x) CHECK(lx.weight() == 3);
    for (const PauliString& lz : code.logical_z) CHECK(lz.weight() == 3);
}

TEST_CASE("bad sizes") {
    CHECK_THROWS_AS(build_hcode(4), std::invalid_argument);
    CHECK_THROWS_AS(build_hcode(7), std::invalid_argument);
}

TEST_CASE("transversal hadamard") {
    CHECK(verify_transversal_hadamard(build_hcode(6)));
    CHECK(verify_transversal_hadamard(build_hcode(24)));

    // Corrupting S1 breaks the property (the code is not even CSS-paired).
    StabilizerCode broken = build_hcode(6);
    broken.stabilizers[0] = PauliString::from_x(6, {0, 1, 2, 4});
    CHECK_FALSE(verify_transversal_hadamard(broken));
}

TEST_CASE("distance two") {
    CHECK(code_distance_exhaustive(build_hcode(6)) == 2);
    CHECK(code_distance_exhaustive(build_hcode(8)) == 2);
    CHECK(code_distance_exhaustive(build_hcode(10)) == 2);
    CHECK_THROWS_AS(code_distance_exhaustive(build_hcode(12)), std::invalid_argument);
}

TEST_CASE("invariants hold for the whole family") {
    for (int n = 6; n <= 24; n += 2) {
        StabilizerCode code = build_hcode(n);  // build_hcode validates
        CHECK(code.k == n - 4);
        CHECK(verify_transversal_hadamard(code));
    }
}
