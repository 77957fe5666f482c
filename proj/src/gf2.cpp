#include "msd/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace msd {

Bits::Bits(int n) : n_(n), w_((static_cast<size_t>(n) + 63) / 64, 0) {
    if (n < 0 || n > kMaxBits) throw std::invalid_argument("Bits: length out of range");
}

Bits Bits::from_indices(int n, const std::vector<int>& idx) {
    Bits b(n);
    for (int i : idx) b.set(i);
    return b;
}

Bits Bits::from_indices(int n, std::initializer_list<int> idx) {
    return from_indices(n, std::vector<int>(idx));
}

void Bits::set(int i) {
    if (i < 0 || i >= n_) throw std::invalid_argument("Bits::set: index out of range");
    w_[static_cast<size_t>(i) >> 6] |= uint64_t(1) << (i & 63);
}

void Bits::reset(int i) {
    if (i < 0 || i >= n_) throw std::invalid_argument("Bits::reset: index out of range");
    w_[static_cast<size_t>(i) >> 6] &= ~(uint64_t(1) << (i & 63));
}

void Bits::flip(int i) {
    if (i < 0 || i >= n_) throw std::invalid_argument("Bits::flip: index out of range");
    w_[static_cast<size_t>(i) >> 6] ^= uint64_t(1) << (i & 63);
}

void Bits::clear() { std::fill(w_.begin(), w_.end(), 0); }

void Bits::operator^=(const Bits& o) {
    if (o.n_ != n_) throw std::invalid_argument("Bits: length mismatch");
    for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
}

Bits Bits::operator^(const Bits& o) const {
    Bits r = *this;
    r ^= o;
    return r;
}

void Bits::operator&=(const Bits& o) {
    if (o.n_ != n_) throw std::invalid_argument("Bits: length mismatch");
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
}

int Bits::popcount() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
}

bool Bits::any() const {
    for (uint64_t w : w_)
        if (w) return true;
    return false;
}

bool Bits::parity_and(const Bits& mask) const {
    if (mask.n_ != n_) throw std::invalid_argument("Bits: length mismatch");
    uint64_t acc = 0;
    for (size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & mask.w_[i];
    return std::popcount(acc) & 1;
}

std::vector<int> Bits::indices() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (get(i)) out.push_back(i);
    return out;
}

BitMatrix::BitMatrix(int r, int c) : rows(r), cols(c), row(static_cast<size_t>(r), Bits(c)) {}

BitMatrix BitMatrix::from_rows(const std::vector<Bits>& rows_in) {
    BitMatrix m;
    m.rows = static_cast<int>(rows_in.size());
    m.cols = rows_in.empty() ? 0 : rows_in[0].size();
    m.row = rows_in;
    for (const Bits& r : m.row)
        if (r.size() != m.cols) throw std::invalid_argument("BitMatrix: ragged rows");
    return m;
}

std::vector<int> BitMatrix::reduce() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (row[i].get(c)) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(row[r], row[sel]);
        for (int i = 0; i < rows; ++i)
            if (i != r && row[i].get(c)) row[i] ^= row[r];
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int BitMatrix::rank() const {
    BitMatrix m = *this;
    return static_cast<int>(m.reduce().size());
}

int gf2_rank(const std::vector<Bits>& rows) {
    if (rows.empty()) return 0;
    return BitMatrix::from_rows(rows).rank();
}

bool gf2_in_span(const std::vector<Bits>& gens, const Bits& v) {
    if (!v.any()) return true;
    if (gens.empty()) return false;
    int r0 = gf2_rank(gens);
    std::vector<Bits> ext = gens;
    ext.push_back(v);
    return gf2_rank(ext) == r0;
}

std::vector<Bits> gf2_dual_functionals(const std::vector<Bits>& gens) {
    const int g = static_cast<int>(gens.size());
    if (g == 0) return {};
    const int n = gens[0].size();

    // Reduce the generator matrix while tracking row operations: after
    // elimination, rref_row[i] = sum_j T[i][j] * gens[j]. Each rref row has a
    // pivot column p_i that no other rref row touches, so for v in the span
    // the rref coefficients are simply v[p_i], and the original coefficients
    // follow through T.
    std::vector<Bits> m = gens;
    std::vector<Bits> t(static_cast<size_t>(g), Bits(g));
    for (int i = 0; i < g; ++i) t[static_cast<size_t>(i)].set(i);

    std::vector<int> pivots;
    std::vector<int> pivot_row;
    int r = 0;
    for (int c = 0; c < n && r < g; ++c) {
        int sel = -1;
        for (int i = r; i < g; ++i)
            if (m[static_cast<size_t>(i)].get(c)) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(sel)]);
        std::swap(t[static_cast<size_t>(r)], t[static_cast<size_t>(sel)]);
        for (int i = 0; i < g; ++i) {
            if (i != r && m[static_cast<size_t>(i)].get(c)) {
                m[static_cast<size_t>(i)] ^= m[static_cast<size_t>(r)];
                t[static_cast<size_t>(i)] ^= t[static_cast<size_t>(r)];
            }
        }
        pivots.push_back(c);
        pivot_row.push_back(r);
        ++r;
    }
    if (r != g) throw std::invalid_argument("gf2_dual_functionals: generators are dependent");

    std::vector<Bits> duals(static_cast<size_t>(g), Bits(n));
    for (int j = 0; j < g; ++j) {
        for (size_t i = 0; i < pivots.size(); ++i) {
            if (t[static_cast<size_t>(pivot_row[i])].get(j))
                duals[static_cast<size_t>(j)].set(pivots[i]);
        }
    }
    return duals;
}

}  // namespace msd
