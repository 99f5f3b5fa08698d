#pragma once

// Shared instances and random generators for the unit and acceptance tests.

#include "sgf/constructions.hpp"
#include "sgf/solvers.hpp"

#include "oracles.hpp"

#include <random>
#include <vector>

namespace fixture {

using namespace sgf;

inline auto single_arc() -> Digraph { return make_digraph(2, {{1, 0}}); }

/// Base on a,b,c,d with b->a, b->c, b->d, c->d. alpha_a, alpha_b, alpha_c are single arcs
/// x1 -> x0; alpha_d is the transitive triangle on d0, d1, d2. Factor vertex k is x_k and
/// the factor functions are the subscripts.
struct Figure7 {
    FamilyAssignment family;
    std::vector<ValueMap> functions;
};

inline auto figure7() -> Figure7
{
    std::vector<Arc> base_arcs{{1, 0}, {1, 2}, {1, 3}, {2, 3}};
    auto base = make_digraph(4, base_arcs, {"a", "b", "c", "d"});
    auto triangle = make_digraph(3, {{2, 0}, {2, 1}, {1, 0}});
    return {cartesian_product(base, {single_arc(), single_arc(), single_arc(), triangle}),
            {{0, 1}, {0, 1}, {0, 1}, {0, 1, 2}}};
}

inline auto random_loop_free(std::mt19937_64 &rng, std::size_t min_order, std::size_t max_order) -> Digraph
{
    std::uniform_int_distribution<std::size_t> order(min_order, max_order);
    std::uniform_real_distribution<double> density(0.1, 0.6);
    return oracle::random_digraph(rng, order(rng), density(rng));
}

/// Random loop-free digraph on 1..max_order vertices that has a semi-Grundy function,
/// together with the solver's normalized one.
inline auto random_semi_grundy_factor(std::mt19937_64 &rng, std::size_t max_order) -> std::pair<Digraph, ValueMap>
{
    for (;;) {
        auto d = random_loop_free(rng, 1, max_order);
        if (auto r = find_semi_grundy(d); r.found)
            return {d, *r.witness};
    }
}

/// Same, with the solver's function having maximum exactly `m`.
inline auto random_factor_with_max(std::mt19937_64 &rng, std::size_t max_order, Value m) -> std::pair<Digraph, ValueMap>
{
    for (;;) {
        auto d = random_loop_free(rng, m + 1, std::max<std::size_t>(max_order, m + 1));
        if (auto r = find_semi_grundy(d); r.found && r.witness->max_value() == m)
            return {d, *r.witness};
    }
}

inline auto random_kernel_perfect(std::mt19937_64 &rng, std::size_t max_order) -> Digraph
{
    for (;;) {
        auto d = random_loop_free(rng, 1, max_order);
        if (is_kernel_perfect(d))
            return d;
    }
}

/// Class partition of a value map as a sorted list of vertex lists, independent of the
/// actual values.
inline auto partition(const ValueMap &f) -> std::vector<std::vector<Vertex>>
{
    std::vector<std::vector<Vertex>> classes;
    for (Vertex v = 0; v < f.size(); ++v) {
        bool placed = false;
        for (auto &c : classes)
            if (f[c.front()] == f[v]) {
                c.push_back(v);
                placed = true;
                break;
            }
        if (! placed)
            classes.push_back({v});
    }
    return classes;
}

/// Restriction of a product value map to one factor block, in factor vertex order.
inline auto restrict_to(const FamilyAssignment &fa, const ValueMap &s, Vertex base_vertex) -> ValueMap
{
    std::vector<Value> out;
    for (Vertex x = 0; x < fa.factor(base_vertex).order(); ++x)
        out.push_back(s[fa.product_vertex(base_vertex, x)]);
    return ValueMap(std::move(out));
}

} // namespace fixture
