#pragma once

#include <vector>

#include "msd/pauli.hpp"

namespace msd {

// One [[n, n-4, 2]] code from the transversal-Hadamard family: four
// stabilizer generators plus k = n-4 logical X/Z pairs.
struct StabilizerCode {
    int n = 0;
    int k = 0;
    std::vector<PauliString> stabilizers;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;
};

// Builds H_n: S1 = X1..X4, S2 = Z1..Z4, S3 = X1 X2 X5..Xn, S4 = Z1 Z2 Z5..Zn,
// Xbar_i = X1 X3 X_{i+4}, Zbar_i = Z1 Z3 Z_{i+4}. Validates all structural
// invariants before returning. Site and logical indices are 0-based in code.
StabilizerCode build_hcode(int n);

// Throws std::logic_error if any invariant fails: stabilizers mutually
// commute, logicals commute with stabilizers, logical X_i/Z_j anticommute
// exactly when i == j, and no weight-1 operator is a logical.
void validate_code(const StabilizerCode& code);

// True iff swapping X<->Z on every stabilizer lands back in the stabilizer
// group and swapping logical_x[i] gives logical_z[i] supportwise.
bool verify_transversal_hadamard(const StabilizerCode& code);

// Minimum weight over Pauli strings that commute with all stabilizers but
// are not in the stabilizer group. Scans all 4^n strings; n must stay small.
int code_distance_exhaustive(const StabilizerCode& code, int max_n = 10);

}  // namespace msd
