#pragma once

#include <cstdint>

#include "msd/error_poly.hpp"

namespace msd {

enum class ProtocolKind { Source, BK, MEK, BH, H1, ML };

// Input/output counts of one distillation block. BK, MEK and BH take all
// their inputs at a single infidelity (counted as logical); H1 and ML split
// inputs into encoded states at eps_l and consumed gate ancillas at eps_p.
struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::Source;
    int k = 0;  // encoded qubits per dimension (BH: its own k parameter)
    int t = 0;  // concatenation levels for ML

    int64_t inputs_logical() const;
    int64_t inputs_physical() const;
    int64_t outputs() const;
};

// Output error rate of a one-level (3k+8)-to-k block:
//   (k-1) el^2 + (2k+2) ep^2 + 4 ep^3 + (k+4) el ep^2 + 8(k-1) el ep^3
//   + (k-1)(k-2)(k-3)/6 el^4
ErrorPoly2 level1_error_poly(int k);

// Output error rate of the square two-level block:
//   (k^2-1) el^2 + 8(k^2+4k+3) ep^4 + (k+4)^2 el ep^2
ErrorPoly2 level2_error_poly(int k);

// Level-t generalization (2 <= t <= 4); coincides with level2_error_poly
// termwise at t = 2:
//   (k^t-1) el^2 + 2^(2^t+t-3)(k+1)(k+3)^(t-1) ep^(2^t)
//   + (k+4)^(t*2^(t-2)) el ep^(2^(t-1))
ErrorPoly2 multilevel_error_poly(int k, int t);

// Probability that every input is error-free:
// (1-eps_l)^inputs_logical * (1-eps_p)^inputs_physical.
double acceptance_probability(const ProtocolSpec& spec, double eps_l, double eps_p);

// Prior-protocol output error functions (univariate; exponent lives in the
// first slot). Leading terms only unless full is requested.
ErrorPoly2 bk_error_poly(bool full = false);   // 35 e^3 (+105 e^4 + 378 e^5)
ErrorPoly2 mek_error_poly(bool full = false);  // 9 e^2 (-56 e^3 + 160 e^4)
ErrorPoly2 bh_error_poly(int k);               // (3k+1) e^2

}  // namespace msd
