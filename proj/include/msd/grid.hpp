#pragma once

#include <cstdint>
#include <vector>

#include "msd/gf2.hpp"

namespace msd {

// One encoding block at some concatenation level: the entities it groups (in
// position order along its dimension), the two Y-parity check masks over that
// level's entity space, the reduction masks giving each surviving logical-Y
// bit, and the next-level entity ids those bits feed.
struct GridBlock {
    std::vector<int32_t> entities;
    std::vector<int32_t> out_entities;
    Bits check1;
    Bits check2;
    std::vector<Bits> logical_masks;
};

struct GridLevel {
    int n = 0;             // block length along this level's dimension
    int entity_count = 0;  // size of this level's entity space
    std::vector<GridBlock> blocks;
};

// A t-dimensional concatenation of H codes on a cartesian grid of sites.
// Level d groups entities into lines along dimension d; the logical qubits of
// each line become the entities of level d+1.
struct GridCode {
    std::vector<int> dims;
    int t = 0;
    int site_count = 0;
    int encoded_count = 0;
    std::vector<GridLevel> levels;

    // Every block's two Y-parity checks lifted to physical sites; these are
    // also the lifts of the Y-type stabilizer elements.
    std::vector<Bits> lifted_checks;
    // Per encoded qubit, a site-level support whose parity gives that qubit's
    // logical-Y bit on any pattern passing all checks.
    std::vector<Bits> lifted_logical_supports;
    // Per encoded qubit, its index position (0-based) along each dimension.
    std::vector<std::vector<int>> logical_index_tuples;

    int site_index(const std::vector<int>& coords) const;
    std::vector<int> site_coords(int site) const;
};

struct HierarchicalSyndrome {
    int level = 0;   // 1-based level where detection happened (== t when clean)
    bool detected = false;
    Bits logical_y_bits;  // over encoded qubits; empty when detected
};

// Scratch buffers so syndrome evaluation in hot loops does not allocate.
struct SyndromeScratch {
    std::vector<Bits> level_bits;
};

GridCode build_grid_code(const std::vector<int>& dims);

SyndromeScratch make_syndrome_scratch(const GridCode& grid);
HierarchicalSyndrome hierarchical_syndrome(const GridCode& grid, const Bits& y_pattern);
HierarchicalSyndrome hierarchical_syndrome(const GridCode& grid, const Bits& y_pattern,
                                           SyndromeScratch& scratch);

// Minimum weight of a Y-site-pattern with all check parities even and a
// nontrivial action on encoded qubits. Scans patterns by increasing weight.
int y_distance(const GridCode& grid, int weight_cap, int64_t budget = 100000000);

}  // namespace msd
