#include "msd/error_models.hpp"

#include <cmath>
#include <stdexcept>

namespace msd {

namespace {

// k must be even for an H code; the search constrains k <= 20 but the error
// functions themselves stay valid for much larger blocks (asymptotic checks
// evaluate them at k ~ 10^4).
void check_k(int k) {
    if (k < 2 || k % 2 != 0 || k > 1000000)
        throw std::invalid_argument("error model: k must be even, 2 <= k <= 1e6");
}

int64_t ipow(int64_t base, int exp) {
    int64_t v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

}  // namespace

int64_t ProtocolSpec::inputs_logical() const {
    switch (kind) {
        case ProtocolKind::Source: return 0;
        case ProtocolKind::BK: return 15;
        case ProtocolKind::MEK: return 10;
        case ProtocolKind::BH: return 3 * static_cast<int64_t>(k) + 8;
        case ProtocolKind::H1: return k;
        case ProtocolKind::ML: return ipow(k, t);
    }
    return 0;
}

int64_t ProtocolSpec::inputs_physical() const {
    switch (kind) {
        case ProtocolKind::H1: return 2 * static_cast<int64_t>(k + 4);
        case ProtocolKind::ML: return ipow(2, t - 1) * ipow(k + 4, t);
        default: return 0;
    }
}

int64_t ProtocolSpec::outputs() const {
    switch (kind) {
        case ProtocolKind::Source: return 1;
        case ProtocolKind::BK: return 1;
        case ProtocolKind::MEK: return 2;
        case ProtocolKind::BH: return k;
        case ProtocolKind::H1: return k;
        case ProtocolKind::ML: return ipow(k, t);
    }
    return 1;
}

ErrorPoly2 level1_error_poly(int k) {
    check_k(k);
    ErrorPoly2 p;
    p.set_term(2, 0, k - 1);
    p.set_term(0, 2, 2.0 * (k + 1));
    p.set_term(0, 3, 4);
    p.set_term(1, 2, k + 4);
    p.set_term(1, 3, 8.0 * (k - 1));
    if (k >= 4)
        p.set_term(4, 0, static_cast<double>(k - 1) * (k - 2) * (k - 3) / 6.0);
    return p;
}

ErrorPoly2 level2_error_poly(int k) {
    check_k(k);
    ErrorPoly2 p;
    p.set_term(2, 0, static_cast<double>(k) * k - 1);
    p.set_term(0, 4, 8.0 * (static_cast<double>(k) * k + 4.0 * k + 3));
    p.set_term(1, 2, static_cast<double>(k + 4) * (k + 4));
    return p;
}

ErrorPoly2 multilevel_error_poly(int k, int t) {
    check_k(k);
    if (t < 2 || t > 4) throw std::invalid_argument("multilevel_error_poly: t must be in [2,4]");
    ErrorPoly2 p;
    p.set_term(2, 0, std::pow(static_cast<double>(k), t) - 1.0);
    p.set_term(0, 1 << t,
               std::pow(2.0, (1 << t) + t - 3) * (k + 1) * std::pow(static_cast<double>(k + 3), t - 1));
    p.set_term(1, 1 << (t - 1),
               std::pow(static_cast<double>(k + 4), t * (1 << (t - 2))));
    return p;
}

double acceptance_probability(const ProtocolSpec& spec, double eps_l, double eps_p) {
    if (eps_l < 0 || eps_p < 0 || eps_l > 0.05 || eps_p > 0.05)
        throw std::domain_error("acceptance_probability: eps outside [0, 0.05]");
    return std::pow(1.0 - eps_l, static_cast<double>(spec.inputs_logical())) *
           std::pow(1.0 - eps_p, static_cast<double>(spec.inputs_physical()));
}

ErrorPoly2 bk_error_poly(bool full) {
    ErrorPoly2 p;
    p.set_term(3, 0, 35);
    if (full) {
        p.set_term(4, 0, 105);
        p.set_term(5, 0, 378);
    }
    return p;
}

ErrorPoly2 mek_error_poly(bool full) {
    ErrorPoly2 p;
    p.set_term(2, 0, 9);
    if (full) {
        p.set_term(3, 0, -56);
        p.set_term(4, 0, 160);
    }
    return p;
}

ErrorPoly2 bh_error_poly(int k) {
    check_k(k);
    ErrorPoly2 p;
    p.set_term(2, 0, 3.0 * k + 1);
    return p;
}

}  // namespace msd
