#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "msd/error_poly.hpp"
#include "msd/grid.hpp"

namespace msd {

// One configuration of input errors: a bit per encoded magic state, and per
// site a bit for each of the two consumed gate ancillas.
struct ErrorConfig {
    Bits logical_bits;
    Bits first_gate_bits;
    Bits second_gate_bits;
};

struct ClassifyResult {
    bool accepted = false;
    Bits output_error_bits;
};

// Propagation rules for one distillation block: the Hadamard measurement
// flags odd parity of encoded errors plus first-gate errors; the stabilizer
// round sees the per-site XOR of the two gate errors; the surviving logical-Y
// action adds onto the encoded error bits.
ClassifyResult classify_config(const GridCode& grid, const ErrorConfig& cfg);

// Exact bivariate polynomial stored as weight counts: the value is
//   sum_{a,b} N[a][b] el^a (1-el)^(L-a) ep^b (1-ep)^(G-b)
// over L logical bits and G gate bits. Monomial coefficients are recovered
// exactly by binomial expansion.
class WeightPoly {
public:
    WeightPoly() = default;
    WeightPoly(int logical_bits, int gate_bits);

    void add(int wl, int wp, int64_t count = 1);
    void merge(const WeightPoly& o);
    double eval(double eps_l, double eps_p) const;
    // Exact coefficient of el^i ep^j. Only meaningful up to the enumeration's
    // truncation degree; throws on int64 overflow.
    int64_t coefficient(int i, int j) const;
    int64_t count_at(int wl, int wp) const;
    int64_t total_count() const;
    int logical_bits() const { return lb_; }
    int gate_bits() const { return gb_; }
    ErrorPoly2 to_error_poly(int max_total_degree) const;

private:
    int lb_ = 0, gb_ = 0;
    std::vector<int64_t> n_;
};

struct OracleResult {
    int t = 0;
    std::vector<int> dims;
    int k_encoded = 0;
    int sites = 0;
    int total_bits = 0;
    std::optional<int> truncation_weight;  // nullopt = exact enumeration
    WeightPoly accept_prob;
    std::vector<WeightPoly> marginal_error;  // per output; joint(accepted AND output i wrong)
    WeightPoly joint_all_correct;

    // Upper bound on probability mass of configurations beyond the
    // truncation weight; zero for exact enumeration.
    double tail_bound(double eps_max) const;
};

// All 2^bits configurations; requires encoded + 2*sites <= 26.
OracleResult enumerate_exact(const GridCode& grid);

// All configurations of total Hamming weight <= max_weight; coefficients of
// total degree <= max_weight are exact.
OracleResult enumerate_truncated(const GridCode& grid, int max_weight, int threads = 1,
                                 int64_t budget = 100000000);

double conditional_error(const OracleResult& result, double eps_l, double eps_p);

// Coefficient-by-coefficient comparison of the enumerated marginal against
// the closed-form output-error polynomial for the same block. The oracle
// side is the count of accepted wrong-output configurations with exactly
// (i logical, j gate) errors: the leading coefficient of that monomial,
// which is what the closed forms enumerate.
struct CoeffCheck {
    int i = 0, j = 0;
    int64_t oracle_value = 0;
    double closed_form = 0;
    bool required = false;  // required checks gate the exit status
    bool match = false;
};

struct ComparisonReport {
    int t = 0;
    int k = 0;
    std::vector<CoeffCheck> checks;
    bool all_required_match = true;
};

ComparisonReport compare_with_closed_form(const OracleResult& result);

}  // namespace msd
