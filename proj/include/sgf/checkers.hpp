#pragma once

#include "sgf/digraph.hpp"

#include <cstddef>

namespace sgf {

/// Nonempty independent S such that every arc leaving S is answered by an arc from its
/// head back into S. The empty set is never a semi-kernel.
auto is_semi_kernel(const Digraph &d, const VertexSet &s) -> bool;

/// Independent N absorbing every vertex outside it.
auto is_kernel(const Digraph &d, const VertexSet &n) -> bool;

auto is_grundy(const Digraph &d, const ValueMap &g) -> bool;

/// No arc joins equal values, and every value-increasing arc (x,y) is answered by an arc
/// (y,z) with value(z) == value(x). Values need not be consecutive.
auto is_semi_grundy(const Digraph &d, const ValueMap &s) -> bool;

/// Zero class of a Grundy function. Throws ContractError if g is not Grundy on d.
auto kernel_from_grundy(const Digraph &d, const ValueMap &g) -> VertexSet;

/// Minimum class of a semi-Grundy function. Throws InputError on the empty digraph and
/// ContractError if s is not semi-Grundy on d.
auto semi_kernel_from_semi_grundy(const Digraph &d, const ValueMap &s) -> VertexSet;

/// Number of distinct values; for a semi-Grundy map an upper bound on the chromatic number.
auto coloring_classes(const ValueMap &s) -> std::size_t;

} // namespace sgf
