#include "msd/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace msd {

PauliString PauliString::from_x(int n, const std::vector<int>& sites) {
    PauliString p(n);
    for (int s : sites) p.x.set(s);
    return p;
}

PauliString PauliString::from_z(int n, const std::vector<int>& sites) {
    PauliString p(n);
    for (int s : sites) p.z.set(s);
    return p;
}

PauliString PauliString::from_y(int n, const std::vector<int>& sites) {
    PauliString p(n);
    for (int s : sites) {
        p.x.set(s);
        p.z.set(s);
    }
    return p;
}

int PauliString::weight() const {
    Bits support = x;
    const auto& zw = z.words();
    // x | z popcount without a temporary copy of both
    int c = 0;
    for (size_t i = 0; i < support.words().size(); ++i)
        c += std::popcount(support.words()[i] | zw[i]);
    return c;
}

Bits PauliString::symplectic() const {
    Bits v(2 * n);
    for (int i : x.indices()) v.set(i);
    for (int i : z.indices()) v.set(n + i);
    return v;
}

PauliString PauliString::hadamard_swapped() const {
    PauliString p(n);
    p.x = z;
    p.z = x;
    return p;
}

bool commutes(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) throw std::invalid_argument("commutes: length mismatch");
    return !(a.x.parity_and(b.z) ^ a.z.parity_and(b.x));
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    if (a.n != b.n) throw std::invalid_argument("multiply: length mismatch");
    PauliString p(a.n);
    p.x = a.x ^ b.x;
    p.z = a.z ^ b.z;
    return p;
}

bool in_group(const PauliString& p, const std::vector<PauliString>& generators) {
    std::vector<Bits> rows;
    rows.reserve(generators.size());
    for (const PauliString& g : generators) {
        if (g.n != p.n) throw std::invalid_argument("in_group: length mismatch");
        rows.push_back(g.symplectic());
    }
    return gf2_in_span(rows, p.symplectic());
}

int min_coset_weight(const PauliString& p, const std::vector<PauliString>& stabilizers) {
    const size_t g = stabilizers.size();
    if (g > 20) throw std::invalid_argument("min_coset_weight: too many generators for exhaustive scan");
    for (const PauliString& s : stabilizers)
        if (s.n != p.n) throw std::invalid_argument("min_coset_weight: length mismatch");

    // Gray-code walk over all 2^g subset products.
    PauliString cur = p;
    int best = cur.weight();
    uint32_t prev_gray = 0;
    for (uint64_t i = 1; i < (uint64_t(1) << g); ++i) {
        uint32_t gray = static_cast<uint32_t>(i ^ (i >> 1));
        uint32_t changed = gray ^ prev_gray;
        int bit = std::countr_zero(changed);
        cur = multiply(cur, stabilizers[static_cast<size_t>(bit)]);
        prev_gray = gray;
        best = std::min(best, cur.weight());
    }
    return best;
}

}  // namespace msd
