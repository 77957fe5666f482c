#pragma once

#include <set>
#include <string>
#include <vector>

#include "msd/protocol.hpp"

namespace msd {

struct ParetoEntry {
    double eps_out = 0;
    double cost = 0;
    double accept = 0;
    int depth = 0;
    ExprPtr expr;
    std::string serialized;
};

// Non-dominated (eps_out, cost) front, sorted by ascending eps_out with
// strictly decreasing cost.
struct ParetoSet {
    double eps0 = 0;
    std::vector<ParetoEntry> entries;
};

struct SearchOptions {
    double eps0 = 0.01;
    int max_rounds = 5;
    int max_k = 20;      // H1/ML blocks
    int bh_max_k = 40;   // BH blocks
    std::set<ProtocolKind> families = {ProtocolKind::BK, ProtocolKind::MEK, ProtocolKind::BH,
                                       ProtocolKind::H1, ProtocolKind::ML};
    double dominance_tol = 1e-6;
    int max_entries = 512;
    // Candidates below this output error are discarded: they sit past every
    // practical target and would crowd the capped front out of the useful
    // region.
    double eps_floor = 1e-45;
    int threads = 1;
    bool full_prior_polys = false;
};

// Round-iterated closure over protocol applications with Pareto pruning.
// Deterministic: output is identical across runs and across thread counts.
ParetoSet pareto_search(const SearchOptions& opts);

// Minimum-cost entry with eps_out <= target; throws if unreachable.
const ParetoEntry& query(const ParetoSet& set, double target_eps);
const ParetoEntry* try_query(const ParetoSet& set, double target_eps);

// Total input magic states for the r-round square chain with k encoded
// qubits per dimension; exact integer.
__int128 total_input_count(int r, int k);
std::string int128_to_string(__int128 v);

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double gamma = 0;
    int points = 0;
};

// Least-squares fit of cost against -log10(eps_out) over per-integer-exponent
// query results; gamma from log(cost) vs log(log(eps0/eps)) over exponents
// >= 10.
FitResult fit_cost_curve(const ParetoSet& set, int min_exp = 5, int max_exp = 40);

// Inputs-per-output of the round chain E1(e,e), E2(., e), ... with raw
// physical inputs, acceptance treated as 1 (the asymptotic count).
std::vector<double> asymptotic_ratio_check(int64_t k, double eps, int r_max);

// CSV emission. pareto_csv: one row per integer target exponent with the
// queried protocol; plot_csv: (neg_log10_eps, cost) rows with the fit in a
// comment header.
std::string pareto_csv(const ParetoSet& set, int min_exp = 5, int max_exp = 40);
std::string plot_csv(const ParetoSet& set, const FitResult& fit, int min_exp = 5, int max_exp = 40);

std::string format_double(double v);

}  // namespace msd
