#include "sgf/checkers.hpp"
#include "sgf/errors.hpp"

#include <algorithm>

namespace sgf {

namespace {
    void require_total(const Digraph &d, const ValueMap &f, const char *who)
    {
        if (f.size() != d.order())
            throw InputError(std::string(who) + ": value map has " + std::to_string(f.size())
                             + " entries for a digraph of order " + std::to_string(d.order()));
    }

    void require_universe(const Digraph &d, const VertexSet &s, const char *who)
    {
        if (s.universe() != d.order())
            throw InputError(std::string(who) + ": set universe does not match digraph order");
    }
}

auto is_semi_kernel(const Digraph &d, const VertexSet &s) -> bool
{
    require_universe(d, s, "is_semi_kernel");
    if (s.empty() || ! is_independent(d, s))
        return false;
    for (Vertex x : s.members())
        for (Vertex z : d.successors(x))
            if (! d.out_set(z).intersects(s))
                return false;
    return true;
}

auto is_kernel(const Digraph &d, const VertexSet &n) -> bool
{
    require_universe(d, n, "is_kernel");
    if (! is_independent(d, n))
        return false;
    for (Vertex z = 0; z < d.order(); ++z)
        if (! n.contains(z) && ! d.out_set(z).intersects(n))
            return false;
    return true;
}

auto is_grundy(const Digraph &d, const ValueMap &g) -> bool
{
    require_total(d, g, "is_grundy");
    std::vector<Value> succ;
    for (Vertex x = 0; x < d.order(); ++x) {
        succ.clear();
        for (Vertex y : d.successors(x))
            succ.push_back(g[y]);
        if (g[x] != mex(succ))
            return false;
    }
    return true;
}

auto is_semi_grundy(const Digraph &d, const ValueMap &s) -> bool
{
    require_total(d, s, "is_semi_grundy");

    // Sorted successor values per vertex answer condition 2 by binary search.
    std::vector<std::vector<Value>> succ_values(d.order());
    for (Vertex y = 0; y < d.order(); ++y) {
        auto &vals = succ_values[y];
        for (Vertex z : d.successors(y))
            vals.push_back(s[z]);
        std::sort(vals.begin(), vals.end());
    }

    for (const auto &[x, y] : d.arcs()) {
        if (s[x] == s[y])
            return false;
        if (s[y] > s[x] && ! std::binary_search(succ_values[y].begin(), succ_values[y].end(), s[x]))
            return false;
    }
    return true;
}

auto kernel_from_grundy(const Digraph &d, const ValueMap &g) -> VertexSet
{
    if (! is_grundy(d, g))
        throw ContractError("kernel_from_grundy: the value map is not a Grundy function");
    return g.preimage(0);
}

auto semi_kernel_from_semi_grundy(const Digraph &d, const ValueMap &s) -> VertexSet
{
    if (d.order() == 0)
        throw InputError("semi_kernel_from_semi_grundy: the empty digraph has no semi-kernel");
    if (! is_semi_grundy(d, s))
        throw ContractError("semi_kernel_from_semi_grundy: the value map is not semi-Grundy");
    return s.preimage(s.min_value());
}

auto coloring_classes(const ValueMap &s) -> std::size_t
{
    std::vector<Value> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

} // namespace sgf
