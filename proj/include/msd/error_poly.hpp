#pragma once

#include <map>
#include <string>
#include <utility>

namespace msd {

// Sparse bivariate polynomial in (eps_l, eps_p), exact coefficients.
class ErrorPoly2 {
public:
    using Key = std::pair<int, int>;

    void set_term(int i, int j, double coeff);
    void add_term(int i, int j, double coeff);
    double coefficient(int i, int j) const;
    const std::map<Key, double>& terms() const { return terms_; }

    double eval(double eps_l, double eps_p) const;

    // {"terms": [[i, j, coeff], ...]} with terms in (i, j) order.
    std::string to_json() const;

    bool operator==(const ErrorPoly2& o) const = default;

private:
    std::map<Key, double> terms_;
};

}  // namespace msd
