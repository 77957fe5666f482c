#include "msd/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace msd {

namespace {

void check_even_k(int k, const char* who) {
    if (k < 2 || k % 2 != 0 || k > 1000000)
        throw std::invalid_argument(std::string(who) + ": k must be even and >= 2");
}

ExprPtr make_node(ProtocolKind kind, int k, int t, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<ProtocolExpr>();
    e->kind = kind;
    e->k = k;
    e->t = t;
    int da = a ? a->depth : 0;
    int db = b ? b->depth : 0;
    e->depth = 1 + std::max(da, db);
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

}  // namespace

ExprPtr ProtocolExpr::source() {
    static const ExprPtr s = std::make_shared<ProtocolExpr>();
    return s;
}

ExprPtr ProtocolExpr::bk(ExprPtr child) { return make_node(ProtocolKind::BK, 0, 0, std::move(child), nullptr); }
ExprPtr ProtocolExpr::mek(ExprPtr child) { return make_node(ProtocolKind::MEK, 0, 0, std::move(child), nullptr); }

ExprPtr ProtocolExpr::bh(int k, ExprPtr child) {
    check_even_k(k, "BH");
    return make_node(ProtocolKind::BH, k, 0, std::move(child), nullptr);
}

ExprPtr ProtocolExpr::h1(int k, ExprPtr logical, ExprPtr physical) {
    check_even_k(k, "H1");
    return make_node(ProtocolKind::H1, k, 1, std::move(logical), std::move(physical));
}

ExprPtr ProtocolExpr::ml(int t, int k, ExprPtr logical, ExprPtr physical) {
    check_even_k(k, "ML");
    if (t < 2 || t > 4) throw std::invalid_argument("ML: t must be in [2,4]");
    return make_node(ProtocolKind::ML, k, t, std::move(logical), std::move(physical));
}

bool expr_equal(const ProtocolExpr& a, const ProtocolExpr& b) {
    if (a.kind != b.kind || a.k != b.k || a.t != b.t) return false;
    if (static_cast<bool>(a.a) != static_cast<bool>(b.a)) return false;
    if (static_cast<bool>(a.b) != static_cast<bool>(b.b)) return false;
    if (a.a && !expr_equal(*a.a, *b.a)) return false;
    if (a.b && !expr_equal(*a.b, *b.b)) return false;
    return true;
}

std::string print_expr(const ProtocolExpr& e) {
    switch (e.kind) {
        case ProtocolKind::Source: return "eps0";
        case ProtocolKind::BK: return "BK(" + print_expr(*e.a) + ")";
        case ProtocolKind::MEK: return "MEK(" + print_expr(*e.a) + ")";
        case ProtocolKind::BH: return "BH[" + std::to_string(e.k) + "](" + print_expr(*e.a) + ")";
        case ProtocolKind::H1:
            return "H1[" + std::to_string(e.k) + "](" + print_expr(*e.a) + "," + print_expr(*e.b) + ")";
        case ProtocolKind::ML:
            return "ML[" + std::to_string(e.t) + "][" + std::to_string(e.k + 4) + "](" +
                   print_expr(*e.a) + "," + print_expr(*e.b) + ")";
    }
    throw std::logic_error("print_expr: bad kind");
}

namespace {

struct Parser {
    std::string_view s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse_expr: " + msg + " at offset " + std::to_string(pos));
    }
    char peek() const { return pos < s.size() ? s[pos] : '\0'; }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
    bool consume(std::string_view word) {
        if (s.substr(pos, word.size()) == word) {
            pos += word.size();
            return true;
        }
        return false;
    }
    int number() {
        size_t start = pos;
        while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
        if (pos == start) fail("expected number");
        return std::stoi(std::string(s.substr(start, pos - start)));
    }
    int bracket_number() {
        expect('[');
        int v = number();
        expect(']');
        return v;
    }

    ExprPtr expr() {
        if (consume("eps0")) return ProtocolExpr::source();
        if (consume("BK")) {
            expect('(');
            ExprPtr c = expr();
            expect(')');
            return ProtocolExpr::bk(std::move(c));
        }
        if (consume("MEK")) {
            expect('(');
            ExprPtr c = expr();
            expect(')');
            return ProtocolExpr::mek(std::move(c));
        }
        if (consume("BH")) {
            int k = bracket_number();
            expect('(');
            ExprPtr c = expr();
            expect(')');
            return ProtocolExpr::bh(k, std::move(c));
        }
        if (consume("H1")) {
            int k = bracket_number();
            expect('(');
            ExprPtr l = expr();
            expect(',');
            ExprPtr p = expr();
            expect(')');
            return ProtocolExpr::h1(k, std::move(l), std::move(p));
        }
        if (consume("ML")) {
            int t = bracket_number();
            int n = bracket_number();
            if (n < 6) fail("ML dimension must be >= 6");
            expect('(');
            ExprPtr l = expr();
            expect(',');
            ExprPtr p = expr();
            expect(')');
            return ProtocolExpr::ml(t, n - 4, std::move(l), std::move(p));
        }
        fail("unknown protocol");
    }
};

}  // namespace

ExprPtr parse_expr(std::string_view text) {
    Parser parser{text};
    ExprPtr e = parser.expr();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return e;
}

ProtocolEval evaluate_node(const ProtocolSpec& spec, const ProtocolEval& logical,
                           const ProtocolEval& physical, const EvalOptions& opts) {
    auto check_domain = [&](double eps) {
        if (!(eps >= 0) || eps > opts.eps_domain_max)
            throw std::domain_error("evaluate: eps outside the model domain");
    };

    double el = logical.eps_out;
    double ep = physical.eps_out;
    check_domain(el);

    double eps_out = 0;
    switch (spec.kind) {
        case ProtocolKind::Source: return {el, logical.cost, logical.accept};
        case ProtocolKind::BK: eps_out = bk_error_poly(opts.full_prior_polys).eval(el, 0); break;
        case ProtocolKind::MEK: eps_out = mek_error_poly(opts.full_prior_polys).eval(el, 0); break;
        case ProtocolKind::BH: eps_out = bh_error_poly(spec.k).eval(el, 0); break;
        case ProtocolKind::H1:
            check_domain(ep);
            eps_out = level1_error_poly(spec.k).eval(el, ep);
            break;
        case ProtocolKind::ML:
            check_domain(ep);
            eps_out = multilevel_error_poly(spec.k, spec.t).eval(el, ep);
            break;
    }

    double accept = acceptance_probability(spec, el, spec.inputs_physical() ? ep : 0.0);
    double in_l = static_cast<double>(spec.inputs_logical());
    double in_p = static_cast<double>(spec.inputs_physical());
    double cost = (in_l * logical.cost + in_p * physical.cost) /
                  (static_cast<double>(spec.outputs()) * accept);
    return {eps_out, cost, accept};
}

ProtocolEval evaluate(const ProtocolExpr& e, const EvalOptions& opts) {
    if (e.kind == ProtocolKind::Source) {
        if (!(opts.eps0 > 0) || opts.eps0 > opts.eps_domain_max)
            throw std::domain_error("evaluate: eps0 outside (0, 0.05]");
        return {opts.eps0, 1.0, 1.0};
    }
    ProtocolEval logical = evaluate(*e.a, opts);
    ProtocolEval physical = e.b ? evaluate(*e.b, opts) : ProtocolEval{0, 0, 1};
    return evaluate_node(e.spec(), logical, physical, opts);
}

}  // namespace msd
