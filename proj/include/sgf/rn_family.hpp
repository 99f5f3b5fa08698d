#pragma once

#include "sgf/digraph.hpp"

#include <optional>

namespace sgf {

/// Vertex x_p of R_n: residue x in Z_4 at level p, stored at index 4p + x.
struct RnVertex {
    Vertex x = 0;
    Vertex level = 0;

    auto index() const -> Vertex { return 4 * level + x; }
    static auto from_index(Vertex v) -> RnVertex { return {v % 4, v / 4}; }
};

/// R_n for n >= 2 on 4(n+1) vertices, labelled "x_p". Throws InputError for n < 2.
///
/// The base R_2 has the rule arcs for levels 1 and 2 (x_2 -> x_1, x_2 -> (x+1)_0,
/// x_1 -> x_0) plus 1_0 -> 1_1 and 3_0 -> 3_1, which give the odd level-0 vertices a
/// successor of parity value 0. Level m+1 then adds x_{m+1} -> x_{m-2i} and
/// x_{m+1} -> (x+1)_{m-2i-1} for every i keeping the target level non-negative.
auto build_rn(unsigned n) -> Digraph;

/// (x + p) mod 2: a Grundy function of R_n with maximum 1.
auto rn_g1(unsigned n) -> ValueMap;

/// p: a Grundy function of R_n with maximum n.
auto rn_g2(unsigned n) -> ValueMap;

/// Largest difference between the maxima of two Grundy functions of d, or nullopt when d
/// has no Grundy function. Subject to enumerate_grundy's size guard.
auto grundy_gap(const Digraph &d) -> std::optional<Value>;

} // namespace sgf
