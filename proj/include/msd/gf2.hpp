#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace msd {

// Maximum supported length for bit vectors (qubits, grid sites). Keeps every
// exhaustive routine in the library at desk scale.
inline constexpr int kMaxBits = 4096;

// Dynamic bit vector over GF(2), packed into 64-bit words. Unused tail bits of
// the last word are kept zero so that equality and popcount work wordwise.
class Bits {
public:
    Bits() = default;
    explicit Bits(int n);
    static Bits from_indices(int n, const std::vector<int>& idx);
    static Bits from_indices(int n, std::initializer_list<int> idx);

    int size() const { return n_; }
    bool get(int i) const { return (w_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1u; }
    void set(int i);
    void reset(int i);
    void flip(int i);
    void clear();

    void operator^=(const Bits& o);
    Bits operator^(const Bits& o) const;
    void operator&=(const Bits& o);

    bool operator==(const Bits& o) const = default;

    int popcount() const;
    bool any() const;
    // Parity of |this AND mask|; the workhorse of all syndrome evaluation.
    bool parity_and(const Bits& mask) const;

    std::vector<int> indices() const;
    const std::vector<uint64_t>& words() const { return w_; }
    uint64_t word0() const { return w_.empty() ? 0 : w_[0]; }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

// Row-major bit matrix with GF(2) elimination.
struct BitMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Bits> row;

    BitMatrix() = default;
    BitMatrix(int r, int c);
    static BitMatrix from_rows(const std::vector<Bits>& rows_in);

    int rank() const;
    // Reduced row echelon form (in place); returns pivot columns.
    std::vector<int> reduce();
};

int gf2_rank(const std::vector<Bits>& rows);
bool gf2_in_span(const std::vector<Bits>& gens, const Bits& v);

// For an independent generating set, returns one functional per generator:
// masks m_i such that any v in the span decomposes as v = sum c_i * gens[i]
// with c_i = parity(v AND m_i). Throws if the generators are dependent.
std::vector<Bits> gf2_dual_functionals(const std::vector<Bits>& gens);

}  // namespace msd
