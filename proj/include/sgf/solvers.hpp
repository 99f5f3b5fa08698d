#pragma once

#include "sgf/digraph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace sgf {

/// Outcome of an exhaustive search. When found, the witness has already been re-checked.
template <typename Witness>
struct SolveResult {
    bool found = false;
    std::optional<Witness> witness;
    std::uint64_t nodes_explored = 0;
};

using SetSolveResult = SolveResult<VertexSet>;
using MapSolveResult = SolveResult<ValueMap>;

/// Largest order accepted by the backtracking solvers (one machine word per adjacency row).
inline constexpr std::size_t max_solver_order = 64;
/// Largest order accepted by the subset sweeps (2^n induced subdigraphs).
inline constexpr std::size_t max_hereditary_order = 20;
/// Largest order accepted by enumerate_grundy.
inline constexpr std::size_t max_enumeration_order = 12;

/// Least nonempty semi-kernel under (cardinality, mask) order.
auto find_semi_kernel(const Digraph &d) -> SetSolveResult;

/// Least kernel under (cardinality, mask) order; the empty digraph has kernel {}.
auto find_kernel(const Digraph &d) -> SetSolveResult;

/// Every induced subdigraph has a kernel. Throws ResourceError above max_hereditary_order.
auto is_kernel_perfect(const Digraph &d) -> bool;

/// Every nonempty induced subdigraph has a semi-kernel. Same size guard.
auto has_hereditary_semi_kernel(const Digraph &d) -> bool;

/// Lexicographically least Grundy function, searched with g(v) <= outdegree(v).
auto find_grundy(const Digraph &d) -> MapSolveResult;

/// Normalized semi-Grundy function as an ordered partition into classes S_0, S_1, ...,
/// each a semi-kernel of the subdigraph induced by itself and the classes above it. The
/// search tries semi-kernels of each residual in increasing mask order and returns the
/// first complete partition, so the result is deterministic.
auto find_semi_grundy(const Digraph &d) -> MapSolveResult;

/// All Grundy functions in lexicographic order. Throws ResourceError above
/// max_enumeration_order.
auto enumerate_grundy(const Digraph &d) -> std::vector<ValueMap>;

} // namespace sgf
