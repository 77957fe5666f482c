#include "msd/grid.hpp"

#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace msd {

namespace {

// Mixed-radix coordinate space with dimension 0 fastest.
struct Space {
    std::vector<int> radix;
    std::vector<int64_t> stride;
    int64_t count = 1;

    explicit Space(std::vector<int> r) : radix(std::move(r)) {
        stride.resize(radix.size());
        for (size_t j = 0; j < radix.size(); ++j) {
            stride[j] = count;
            count *= radix[j];
        }
    }
    int id(const std::vector<int>& c) const {
        int64_t v = 0;
        for (size_t j = 0; j < radix.size(); ++j) v += c[j] * stride[j];
        return static_cast<int>(v);
    }
    std::vector<int> decode(int id) const {
        std::vector<int> c(radix.size());
        int64_t v = id;
        for (size_t j = 0; j < radix.size(); ++j) {
            c[j] = static_cast<int>(v % radix[j]);
            v /= radix[j];
        }
        return c;
    }
};

Space level_space(const std::vector<int>& dims, int level) {
    // At level d, dimensions below d are already encoded: only their index
    // positions remain as coordinates.
    std::vector<int> r(dims.size());
    for (size_t j = 0; j < dims.size(); ++j)
        r[j] = (static_cast<int>(j) < level) ? dims[j] - 4 : dims[j];
    return Space(r);
}

// Reduction masks over the n positions of one block: masks m_j with
// logical_bit_j = parity(pattern AND m_j) for any pattern passing both
// checks. Derived by solving against the generators of the check nullspace:
// the two Y-type stabilizer supports and the k logical-Y representatives.
std::vector<Bits> reduction_position_masks(int n) {
    const int k = n - 4;
    std::vector<Bits> gens;
    gens.push_back(Bits::from_indices(n, {0, 1, 2, 3}));
    Bits wide(n);
    wide.set(0);
    wide.set(1);
    for (int s = 4; s < n; ++s) wide.set(s);
    gens.push_back(wide);
    for (int j = 0; j < k; ++j) gens.push_back(Bits::from_indices(n, {0, 2, j + 4}));

    std::vector<Bits> duals = gf2_dual_functionals(gens);
    return {duals.begin() + 2, duals.end()};
}

}  // namespace

int GridCode::site_index(const std::vector<int>& coords) const {
    return level_space(dims, 0).id(coords);
}

std::vector<int> GridCode::site_coords(int site) const {
    return level_space(dims, 0).decode(site);
}

GridCode build_grid_code(const std::vector<int>& dims) {
    const int t = static_cast<int>(dims.size());
    if (t < 1 || t > 4) throw std::invalid_argument("build_grid_code: need 1..4 dimensions");
    for (int d : dims)
        if (d < 6 || d % 2 != 0)
            throw std::invalid_argument("build_grid_code: each dimension must be even and >= 6");

    GridCode grid;
    grid.dims = dims;
    grid.t = t;

    Space sites = level_space(dims, 0);
    if (sites.count > kMaxBits) throw std::invalid_argument("build_grid_code: too many sites");
    grid.site_count = static_cast<int>(sites.count);

    Space top = level_space(dims, t);
    grid.encoded_count = static_cast<int>(top.count);

    // Per-entity site supports for the current level; level 0 entities are
    // the sites themselves.
    std::vector<Bits> supports(static_cast<size_t>(grid.site_count));
    for (int s = 0; s < grid.site_count; ++s) {
        supports[static_cast<size_t>(s)] = Bits(grid.site_count);
        supports[static_cast<size_t>(s)].set(s);
    }

    std::map<int, std::vector<Bits>> reduction_cache;

    for (int d = 0; d < t; ++d) {
        Space cur = level_space(dims, d);
        Space next = level_space(dims, d + 1);
        const int n = dims[static_cast<size_t>(d)];
        const int k = n - 4;

        auto it = reduction_cache.find(n);
        if (it == reduction_cache.end())
            it = reduction_cache.emplace(n, reduction_position_masks(n)).first;
        const std::vector<Bits>& red = it->second;

        GridLevel level;
        level.n = n;
        level.entity_count = static_cast<int>(cur.count);

        std::vector<Bits> next_supports(static_cast<size_t>(next.count));

        // One block per assignment of the other coordinates: walk all
        // entities whose coordinate along dimension d is zero.
        for (int anchor = 0; anchor < cur.count; ++anchor) {
            std::vector<int> c = cur.decode(anchor);
            if (c[static_cast<size_t>(d)] != 0) continue;

            GridBlock block;
            block.check1 = Bits(level.entity_count);
            block.check2 = Bits(level.entity_count);
            block.logical_masks.assign(static_cast<size_t>(k), Bits(level.entity_count));

            for (int p = 0; p < n; ++p) {
                c[static_cast<size_t>(d)] = p;
                block.entities.push_back(cur.id(c));
            }
            for (int p : {0, 1, 2, 3}) block.check1.set(block.entities[static_cast<size_t>(p)]);
            block.check2.set(block.entities[0]);
            block.check2.set(block.entities[1]);
            for (int p = 4; p < n; ++p) block.check2.set(block.entities[static_cast<size_t>(p)]);

            for (int j = 0; j < k; ++j) {
                for (int p : red[static_cast<size_t>(j)].indices())
                    block.logical_masks[static_cast<size_t>(j)].set(
                        block.entities[static_cast<size_t>(p)]);
                c[static_cast<size_t>(d)] = j;
                block.out_entities.push_back(next.id(c));
            }

            // Lift this block's structure to physical sites.
            Bits lift1(grid.site_count), lift2(grid.site_count);
            for (int p : {0, 1, 2, 3}) lift1 ^= supports[static_cast<size_t>(block.entities[static_cast<size_t>(p)])];
            lift2 ^= supports[static_cast<size_t>(block.entities[0])];
            lift2 ^= supports[static_cast<size_t>(block.entities[1])];
            for (int p = 4; p < n; ++p) lift2 ^= supports[static_cast<size_t>(block.entities[static_cast<size_t>(p)])];
            grid.lifted_checks.push_back(lift1);
            grid.lifted_checks.push_back(lift2);

            for (int j = 0; j < k; ++j) {
                Bits s(grid.site_count);
                for (int p : red[static_cast<size_t>(j)].indices())
                    s ^= supports[static_cast<size_t>(block.entities[static_cast<size_t>(p)])];
                next_supports[static_cast<size_t>(block.out_entities[static_cast<size_t>(j)])] = s;
            }

            level.blocks.push_back(std::move(block));
        }

        supports = std::move(next_supports);
        grid.levels.push_back(std::move(level));
    }

    grid.lifted_logical_supports = supports;
    for (int q = 0; q < grid.encoded_count; ++q)
        grid.logical_index_tuples.push_back(top.decode(q));

    // Overlap condition: any two sites share at most one block across all
    // levels. Block lines are the identity sites of their entities.
    {
        std::unordered_map<int64_t, int> pair_count;
        for (int d = 0; d < t; ++d) {
            Space cur = level_space(dims, d);
            for (const GridBlock& block : grid.levels[static_cast<size_t>(d)].blocks) {
                std::vector<int> line;
                for (int32_t e : block.entities) {
                    std::vector<int> c = cur.decode(e);
                    std::vector<int> sc(c.size());
                    for (size_t j = 0; j < c.size(); ++j)
                        sc[j] = (static_cast<int>(j) < d) ? c[j] + 4 : c[j];
                    line.push_back(level_space(dims, 0).id(sc));
                }
                for (size_t a = 0; a < line.size(); ++a) {
                    for (size_t b = a + 1; b < line.size(); ++b) {
                        int lo = std::min(line[a], line[b]);
                        int hi = std::max(line[a], line[b]);
                        int64_t key = static_cast<int64_t>(lo) * grid.site_count + hi;
                        if (++pair_count[key] > 1)
                            throw std::logic_error("grid overlap condition violated");
                    }
                }
            }
        }
    }

    return grid;
}

SyndromeScratch make_syndrome_scratch(const GridCode& grid) {
    SyndromeScratch s;
    for (const GridLevel& level : grid.levels) s.level_bits.emplace_back(level.entity_count);
    s.level_bits.emplace_back(grid.encoded_count);
    return s;
}

HierarchicalSyndrome hierarchical_syndrome(const GridCode& grid, const Bits& y_pattern,
                                           SyndromeScratch& scratch) {
    if (y_pattern.size() != grid.site_count)
        throw std::invalid_argument("hierarchical_syndrome: pattern length != site count");

    scratch.level_bits[0] = y_pattern;
    for (int d = 0; d < grid.t; ++d) {
        const Bits& cur = scratch.level_bits[static_cast<size_t>(d)];
        Bits& next = scratch.level_bits[static_cast<size_t>(d) + 1];
        next.clear();
        for (const GridBlock& block : grid.levels[static_cast<size_t>(d)].blocks) {
            if (cur.parity_and(block.check1) || cur.parity_and(block.check2))
                return {d + 1, true, Bits()};
            for (size_t j = 0; j < block.logical_masks.size(); ++j)
                if (cur.parity_and(block.logical_masks[j]))
                    next.set(block.out_entities[j]);
        }
    }
    return {grid.t, false, scratch.level_bits[static_cast<size_t>(grid.t)]};
}

HierarchicalSyndrome hierarchical_syndrome(const GridCode& grid, const Bits& y_pattern) {
    SyndromeScratch scratch = make_syndrome_scratch(grid);
    return hierarchical_syndrome(grid, y_pattern, scratch);
}

int y_distance(const GridCode& grid, int weight_cap, int64_t budget) {
    const int n = grid.site_count;
    if (weight_cap < 1) throw std::invalid_argument("y_distance: weight cap must be >= 1");

    // Budget check before scanning.
    double total = 0;
    for (int w = 1; w <= weight_cap; ++w) {
        double c = 1;
        for (int i = 0; i < w; ++i) c = c * (n - i) / (i + 1);
        total += c;
        if (total > static_cast<double>(budget))
            throw std::invalid_argument("y_distance: search space exceeds budget");
    }

    SyndromeScratch scratch = make_syndrome_scratch(grid);
    Bits pattern(n);
    std::vector<int> pos;
    for (int w = 1; w <= weight_cap; ++w) {
        pos.resize(static_cast<size_t>(w));
        std::iota(pos.begin(), pos.end(), 0);
        while (true) {
            pattern.clear();
            for (int p : pos) pattern.set(p);
            HierarchicalSyndrome syn = hierarchical_syndrome(grid, pattern, scratch);
            if (!syn.detected && syn.logical_y_bits.any()) return w;

            int i = w - 1;
            while (i >= 0 && pos[static_cast<size_t>(i)] == n - w + i) --i;
            if (i < 0) break;
            ++pos[static_cast<size_t>(i)];
            for (int j = i + 1; j < w; ++j)
                pos[static_cast<size_t>(j)] = pos[static_cast<size_t>(j) - 1] + 1;
        }
    }
    throw std::invalid_argument("y_distance: no nontrivial pattern within weight cap");
}

}  // namespace msd
