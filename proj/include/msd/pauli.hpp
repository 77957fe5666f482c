#pragma once

#include <vector>

#include "msd/gf2.hpp"

namespace msd {

// An n-qubit Pauli operator as X/Z support bit vectors. Global phase is not
// tracked; equality means support equality.
struct PauliString {
    int n = 0;
    Bits x;
    Bits z;

    PauliString() = default;
    explicit PauliString(int n_in) : n(n_in), x(n_in), z(n_in) {}

    static PauliString from_x(int n, const std::vector<int>& sites);
    static PauliString from_z(int n, const std::vector<int>& sites);
    static PauliString from_y(int n, const std::vector<int>& sites);

    int weight() const;
    bool is_identity() const { return !x.any() && !z.any(); }
    // (x|z) concatenated into a single 2n-bit support vector.
    Bits symplectic() const;
    // Exchange X and Z supports (the action of a transversal Hadamard).
    PauliString hadamard_swapped() const;

    bool operator==(const PauliString& o) const = default;
};

bool commutes(const PauliString& a, const PauliString& b);
PauliString multiply(const PauliString& a, const PauliString& b);

// True iff p's support vector is a GF(2) combination of the generators'
// support vectors (membership in the generated group, phase-insensitive).
bool in_group(const PauliString& p, const std::vector<PauliString>& generators);

// Minimum weight of p*s over the group generated by `stabilizers`.
// Exhaustive over 2^|stabilizers| elements; the list must stay small.
int min_coset_weight(const PauliString& p, const std::vector<PauliString>& stabilizers);

}  // namespace msd
