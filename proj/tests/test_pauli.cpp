#include <stdexcept>
#include <random>

#include "doctest.h"
#include "msd/hcode.hpp"
#include "msd/pauli.hpp"

using namespace msd;

TEST_CASE("commutation basics") {
    PauliString x1 = PauliString::from_x(1, {0});
    PauliString z1 = PauliString::from_z(1, {0});
    CHECK_FALSE(commutes(x1, z1));

    // S1 and S2 of H6 commute by construction.
    PauliString s1 = PauliString::from_x(6, {0, 1, 2, 3});
    PauliString s2 = PauliString::from_z(6, {0, 1, 2, 3});
    CHECK(commutes(s1, s2));

    // Y pattern on {0,1} against an X check on {0,1,2,3}: overlap 2, even.
    PauliString y = PauliString::from_y(6, {0, 1});
    CHECK(commutes(y, s1));

    PauliString wrong_n = PauliString::from_x(5, {0});
    CHECK_THROWS_AS((void)commutes(x1, wrong_n), std::invalid_argument);
}

TEST_CASE("multiply") {
    StabilizerCode h6 = build_hcode(6);
    PauliString self = multiply(h6.logical_x[0], h6.logical_x[0]);
    CHECK(self.is_identity());

    // X1X3X5 * X1X3X6 = X5X6 (0-based sites 4, 5).
    PauliString prod = multiply(h6.logical_x[0], h6.logical_x[1]);
    CHECK(prod == PauliString::from_x(6, {4, 5}));
    CHECK(prod.weight() == 2);

    // S1*S2 has Y-type support on the preamble.
    PauliString s1s2 = multiply(h6.stabilizers[0], h6.stabilizers[1]);
    CHECK(s1s2 == PauliString::from_y(6, {0, 1, 2, 3}));
}

TEST_CASE("group membership") {
    StabilizerCode h6 = build_hcode(6);
    CHECK(in_group(PauliString(6), h6.stabilizers));
    CHECK(in_group(PauliString::from_y(6, {0, 1, 2, 3}), h6.stabilizers));
    CHECK_FALSE(in_group(PauliString::from_x(6, {4, 5}), h6.stabilizers));
}

TEST_CASE("min coset weight") {
    StabilizerCode h6 = build_hcode(6);
    CHECK(min_coset_weight(PauliString(6), h6.stabilizers) == 0);

    PauliString all_logicals(6);
    for (const PauliString& lx : h6.logical_x) all_logicals = multiply(all_logicals, lx);
    CHECK(all_logicals == PauliString::from_x(6, {4, 5}));
    CHECK(min_coset_weight(all_logicals, h6.stabilizers) == 2);

    CHECK(min_coset_weight(h6.logical_x[0], h6.stabilizers) == 3);
}

TEST_CASE("properties over random strings") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + static_cast<int>(rng() % 64);
        auto random_pauli = [&] {
            PauliString p(n);
            for (int i = 0; i < n; ++i) {
                if (rng() & 1) p.x.set(i);
                if (rng() & 1) p.z.set(i);
            }
            return p;
        };
        PauliString a = random_pauli(), b = random_pauli();
        CHECK(commutes(a, b) == commutes(b, a));
        CHECK(multiply(a, a).is_identity());
        CHECK(multiply(multiply(a, b), b) == a);
    }
}

TEST_CASE("in_group invariant under row reduction") {
    StabilizerCode h8 = build_hcode(8);
    // Replace generators by products of themselves; the group is unchanged.
    std::vector<PauliString> reduced = h8.stabilizers;
    reduced[0] = multiply(reduced[0], reduced[1]);
    reduced[2] = multiply(reduced[2], reduced[0]);

    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        PauliString p(8);
        for (int i = 0; i < 8; ++i) {
            if (rng() & 1) p.x.set(i);
            if (rng() & 1) p.z.set(i);
        }
        CHECK(in_group(p, h8.stabilizers) == in_group(p, reduced));
    }
}

TEST_CASE("min_coset_weight bounded by weight") {
    StabilizerCode h6 = build_hcode(6);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        PauliString p(6);
        for (int i = 0; i < 6; ++i) {
            if (rng() & 1) p.x.set(i);
            if (rng() & 1) p.z.set(i);
        }
        CHECK(min_coset_weight(p, h6.stabilizers) <= p.weight());
    }
}
