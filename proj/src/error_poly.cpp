#include "msd/error_poly.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace msd {

void ErrorPoly2::set_term(int i, int j, double coeff) {
    if (i < 0 || j < 0) throw std::invalid_argument("ErrorPoly2: negative exponent");
    if (coeff == 0.0) {
        terms_.erase({i, j});
        return;
    }
    terms_[{i, j}] = coeff;
}

void ErrorPoly2::add_term(int i, int j, double coeff) {
    set_term(i, j, coefficient(i, j) + coeff);
}

double ErrorPoly2::coefficient(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? 0.0 : it->second;
}

double ErrorPoly2::eval(double eps_l, double eps_p) const {
    double sum = 0.0;
    for (const auto& [key, coeff] : terms_) {
        double v = coeff;
        for (int a = 0; a < key.first; ++a) v *= eps_l;
        for (int b = 0; b < key.second; ++b) v *= eps_p;
        sum += v;
    }
    return sum;
}

std::string ErrorPoly2::to_json() const {
    std::string out = "{\"terms\":[";
    bool first = true;
    for (const auto& [key, coeff] : terms_) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "[%d,%d,%.17g]", key.first, key.second, coeff);
        if (!first) out += ",";
        out += buf;
        first = false;
    }
    out += "]}";
    return out;
}

}  // namespace msd
