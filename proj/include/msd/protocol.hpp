#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "msd/error_models.hpp"

namespace msd {

struct ProtocolExpr;
using ExprPtr = std::shared_ptr<const ProtocolExpr>;

// Composition tree of distillation rounds. Source is the raw eps0 supply;
// BK/MEK/BH feed all inputs from one child; H1/ML take a logical source and
// a physical source. Depth counts rounds from Source.
struct ProtocolExpr {
    ProtocolKind kind = ProtocolKind::Source;
    int k = 0;
    int t = 0;
    ExprPtr a;  // logical source (or the only child)
    ExprPtr b;  // physical source for H1/ML
    int depth = 0;

    ProtocolSpec spec() const { return ProtocolSpec{kind, k, t}; }

    static ExprPtr source();
    static ExprPtr bk(ExprPtr child);
    static ExprPtr mek(ExprPtr child);
    static ExprPtr bh(int k, ExprPtr child);
    static ExprPtr h1(int k, ExprPtr logical, ExprPtr physical);
    static ExprPtr ml(int t, int k, ExprPtr logical, ExprPtr physical);
};

bool expr_equal(const ProtocolExpr& a, const ProtocolExpr& b);

// Grammar (bit-exact): eps0 | BK(<e>) | MEK(<e>) | BH[k](<e>) |
// H1[k](<el>,<ep>) | ML[t][n](<el>,<ep>) with n = k+4.
std::string print_expr(const ProtocolExpr& e);
ExprPtr parse_expr(std::string_view text);

struct ProtocolEval {
    double eps_out = 0;
    double cost = 0;    // average eps0 inputs per output, rejection included
    double accept = 0;
};

struct EvalOptions {
    double eps0 = 0.01;
    bool full_prior_polys = false;
    double eps_domain_max = 0.05;
};

// Bottom-up evaluation: Source -> (eps0, cost 1, accept 1); each node applies
// its output-error polynomial at the children's outputs and pays
// (inputs_l * cost_l + inputs_p * cost_p) / (outputs * accept).
ProtocolEval evaluate(const ProtocolExpr& e, const EvalOptions& opts);

// One node given already-evaluated children; the search's inner step.
ProtocolEval evaluate_node(const ProtocolSpec& spec, const ProtocolEval& logical,
                           const ProtocolEval& physical, const EvalOptions& opts);

}  // namespace msd
