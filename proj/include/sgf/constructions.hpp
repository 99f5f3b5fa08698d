#pragma once

#include "sgf/digraph.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace sgf {

/// Order-preserving relabeling of the image onto 0..r.
auto normalize(const ValueMap &s) -> ValueMap;

/// Result of peeling least semi-kernels off successive residual subdigraphs.
struct LayeredSemiGrundy {
    bool ok = false;
    ValueMap values;                          ///< valid only when ok
    std::vector<VertexSet> layers;            ///< S_0, S_1, ... over the input digraph
    std::optional<VertexSet> failed_residual; ///< residual without a semi-kernel
};

auto layered_semi_grundy(const Digraph &d) -> LayeredSemiGrundy;

/// Peels least kernels off successive residuals; value k on the k-th kernel. Throws
/// ContractError naming the residual when one has no kernel (d not kernel-perfect).
auto layered_grundy(const Digraph &d) -> ValueMap;

struct CartesianSum {
    Digraph digraph;
    /// tuples[i] is the coordinate tuple of sum vertex i; tuples are in lexicographic
    /// order, the first factor most significant.
    std::vector<std::vector<Vertex>> tuples;

    auto index_of(std::span<const Vertex> tuple) const -> Vertex;
};

/// Sum digraph whose arcs move exactly one coordinate along an arc of its factor.
/// Throws InputError on an empty factor list or an empty factor.
auto cartesian_sum(std::span<const Digraph> factors) -> CartesianSum;

/// Coordinate-wise integer sum of factor semi-Grundy functions, indexed like
/// cartesian_sum(factors). Throws ContractError if some funcs[i] is not semi-Grundy.
auto sum_semi_grundy(std::span<const Digraph> factors, std::span<const ValueMap> funcs) -> ValueMap;

/// sigma(D, alpha): disjoint union of the factors plus every arc from alpha_u to alpha_v
/// for each arc (u,v) of the base. Factor blocks are laid out in base-vertex order.
class FamilyAssignment {
public:
    FamilyAssignment(Digraph base, std::vector<Digraph> factors);

    auto base() const -> const Digraph & { return base_; }
    auto factors() const -> const std::vector<Digraph> & { return factors_; }
    auto factor(Vertex v) const -> const Digraph & { return factors_.at(v); }
    auto product() const -> const Digraph & { return product_; }

    auto product_vertex(Vertex base_vertex, Vertex factor_vertex) const -> Vertex;
    /// (base vertex, vertex inside its factor) for a product vertex.
    auto origin(Vertex product_vertex) const -> std::pair<Vertex, Vertex> { return origin_.at(product_vertex); }
    auto block(Vertex base_vertex) const -> VertexSet;

private:
    Digraph base_;
    std::vector<Digraph> factors_;
    Digraph product_;
    std::vector<Vertex> offset_;
    std::vector<std::pair<Vertex, Vertex>> origin_;
};

/// Throws InputError on an arity mismatch or an empty factor.
auto cartesian_product(const Digraph &base, std::vector<Digraph> factors) -> FamilyAssignment;

struct LayeringStage {
    VertexSet kernel;                            ///< S_i, over the base
    VertexSet layer;                             ///< N_i, over the product
    VertexSet exhausted;                         ///< M_i (cumulative), over the base
    std::vector<std::pair<Vertex, Value>> minima; ///< (y, m(i,y)) for y in S_i
};

struct LayeringTrace {
    std::vector<LayeringStage> stages;
};

struct ProductSemiGrundy {
    ValueMap values;
    LayeringTrace trace;
};

/// Stage-wise layering for a kernel-perfect base: at stage i take the least kernel of the
/// base restricted to non-exhausted vertices and give value i to the not-yet-placed factor
/// vertices of least factor value under each kernel vertex.
/// Throws ContractError if the base is not kernel-perfect or a factor function is not
/// semi-Grundy on its factor.
auto product_semi_grundy_kp(const FamilyAssignment &fa, std::span<const ValueMap> funcs) -> ProductSemiGrundy;

/// max(S) <= sum of factor maxima + base_order - 1.
auto product_bound_check(std::span<const ValueMap> funcs, std::size_t base_order, const ValueMap &s) -> bool;

struct ExtractedFactors {
    VertexSet semi_kernel;          ///< base vertices whose factor meets the zero class
    std::vector<ValueMap> functions; ///< normalized restriction to each factor
};

/// Recovers a base semi-kernel and factor semi-Grundy functions from a semi-Grundy function
/// of the product. S is normalized first. Throws ContractError if S is not semi-Grundy.
auto extract_factors(const FamilyAssignment &fa, const ValueMap &s) -> ExtractedFactors;

/// S(x) = m_0 + ... + m_{i-1} + f(u) + s_u(x) for x in alpha_u with i = f(u).
/// Requires f normalized semi-Grundy on the base, each funcs[u] normalized semi-Grundy on its
/// factor, and equal factor maxima within each level of f (InputError naming the level).
auto stratified_product_semi_grundy(const FamilyAssignment &fa, const ValueMap &f, std::span<const ValueMap> funcs)
    -> ValueMap;

} // namespace sgf
