#include "msd/hcode.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace msd {

StabilizerCode build_hcode(int n) {
    if (n < 6 || n % 2 != 0) throw std::invalid_argument("build_hcode: n must be even and >= 6");
    if (n > kMaxBits) throw std::invalid_argument("build_hcode: n exceeds configured maximum");

    StabilizerCode code;
    code.n = n;
    code.k = n - 4;

    std::vector<int> preamble_a = {0, 1, 2, 3};
    std::vector<int> wide = {0, 1};
    for (int s = 4; s < n; ++s) wide.push_back(s);

    code.stabilizers.push_back(PauliString::from_x(n, preamble_a));
    code.stabilizers.push_back(PauliString::from_z(n, preamble_a));
    code.stabilizers.push_back(PauliString::from_x(n, wide));
    code.stabilizers.push_back(PauliString::from_z(n, wide));

    for (int i = 0; i < code.k; ++i) {
        code.logical_x.push_back(PauliString::from_x(n, {0, 2, i + 4}));
        code.logical_z.push_back(PauliString::from_z(n, {0, 2, i + 4}));
    }

    validate_code(code);
    return code;
}

void validate_code(const StabilizerCode& code) {
    const auto& st = code.stabilizers;
    for (size_t i = 0; i < st.size(); ++i)
        for (size_t j = i + 1; j < st.size(); ++j)
            if (!commutes(st[i], st[j]))
                throw std::logic_error("stabilizers do not mutually commute");

    if (code.logical_x.size() != static_cast<size_t>(code.k) ||
        code.logical_z.size() != static_cast<size_t>(code.k))
        throw std::logic_error("logical operator count != k");

    for (int i = 0; i < code.k; ++i) {
        for (const PauliString& s : st) {
            if (!commutes(code.logical_x[static_cast<size_t>(i)], s) ||
                !commutes(code.logical_z[static_cast<size_t>(i)], s))
                throw std::logic_error("logical operator anticommutes with a stabilizer");
        }
        for (int j = 0; j < code.k; ++j) {
            bool anti = !commutes(code.logical_x[static_cast<size_t>(i)],
                                  code.logical_z[static_cast<size_t>(j)]);
            if (anti != (i == j))
                throw std::logic_error("logical X/Z pairing violated");
        }
    }

    // Distance >= 2: no weight-1 operator may commute with every stabilizer
    // while lying outside the stabilizer group.
    for (int s = 0; s < code.n; ++s) {
        for (int t = 1; t <= 3; ++t) {
            PauliString p(code.n);
            if (t & 1) p.x.set(s);
            if (t & 2) p.z.set(s);
            bool normalizer = true;
            for (const PauliString& g : st)
                if (!commutes(p, g)) { normalizer = false; break; }
            if (normalizer && !in_group(p, st))
                throw std::logic_error("weight-1 logical operator found (distance < 2)");
        }
    }
}

bool verify_transversal_hadamard(const StabilizerCode& code) {
    for (const PauliString& s : code.stabilizers)
        if (!in_group(s.hadamard_swapped(), code.stabilizers)) return false;
    for (int i = 0; i < code.k; ++i) {
        if (!(code.logical_x[static_cast<size_t>(i)].hadamard_swapped() ==
              code.logical_z[static_cast<size_t>(i)]))
            return false;
    }
    return true;
}

int code_distance_exhaustive(const StabilizerCode& code, int max_n) {
    const int n = code.n;
    if (n > max_n)
        throw std::invalid_argument(
            "code_distance_exhaustive: n too large for a 4^n scan; use y_distance for grids");
    if (n > 31) throw std::invalid_argument("code_distance_exhaustive: n > 31 unsupported");

    // Stabilizer supports as raw masks.
    struct Mask { uint64_t x, z; };
    std::vector<Mask> stab;
    for (const PauliString& s : code.stabilizers)
        stab.push_back({s.x.word0(), s.z.word0()});

    // All 16 group elements for the membership test.
    std::vector<Mask> group;
    for (uint32_t sel = 0; sel < (1u << stab.size()); ++sel) {
        Mask m{0, 0};
        for (size_t b = 0; b < stab.size(); ++b)
            if (sel >> b & 1) { m.x ^= stab[b].x; m.z ^= stab[b].z; }
        group.push_back(m);
    }

    int best = n + 1;
    const uint64_t lim = uint64_t(1) << n;
    for (uint64_t xm = 0; xm < lim; ++xm) {
        for (uint64_t zm = 0; zm < lim; ++zm) {
            if (xm == 0 && zm == 0) continue;
            int w = std::popcount(xm | zm);
            if (w >= best) continue;
            bool normalizer = true;
            for (const Mask& s : stab) {
                int par = (std::popcount(xm & s.z) + std::popcount(zm & s.x)) & 1;
                if (par) { normalizer = false; break; }
            }
            if (!normalizer) continue;
            bool member = false;
            for (const Mask& g : group)
                if (g.x == xm && g.z == zm) { member = true; break; }
            if (!member) best = w;
        }
    }
    return best;
}

}  // namespace msd
