#include "sgf/rn_family.hpp"
#include "sgf/checkers.hpp"
#include "sgf/errors.hpp"
#include "sgf/solvers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sgf {

namespace {
    void require_order(unsigned n)
    {
        if (n < 2)
            throw InputError("R_n is defined for n >= 2, got " + std::to_string(n));
    }

    auto at(Vertex x, Vertex level) -> Vertex { return RnVertex{x % 4, level}.index(); }

    // Arcs leaving level m+1 towards levels 0..m.
    void add_level(std::vector<Arc> &arcs, Vertex m)
    {
        for (Vertex x = 0; x < 4; ++x) {
            Vertex from = at(x, m + 1);
            for (int target = static_cast<int>(m); target >= 0; target -= 2)
                arcs.push_back({from, at(x, static_cast<Vertex>(target))});
            for (int target = static_cast<int>(m) - 1; target >= 0; target -= 2)
                arcs.push_back({from, at(x + 1, static_cast<Vertex>(target))});
        }
    }

    auto base_arcs() -> std::vector<Arc>
    {
        std::vector<Arc> arcs;
        for (Vertex x = 0; x < 4; ++x) {
            arcs.push_back({at(x, 2), at(x, 1)});
            arcs.push_back({at(x, 2), at(x + 1, 0)});
            arcs.push_back({at(x, 1), at(x, 0)});
        }
        arcs.push_back({at(1, 0), at(1, 1)});
        arcs.push_back({at(3, 0), at(3, 1)});
        return arcs;
    }

    auto labels(unsigned n) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        for (Vertex p = 0; p <= n; ++p)
            for (Vertex x = 0; x < 4; ++x)
                out.push_back(std::to_string(x) + "_" + std::to_string(p));
        return out;
    }
}

auto build_rn(unsigned n) -> Digraph
{
    require_order(n);
    auto arcs = base_arcs();
    for (Vertex m = 2; m < n; ++m)
        add_level(arcs, m);
    Digraph d(4 * (n + 1), arcs, labels(n));

    if (n == 2 && ! (is_grundy(d, rn_g1(2)) && is_grundy(d, rn_g2(2))))
        throw std::logic_error("build_rn: base digraph does not carry both Grundy functions");
    return d;
}

auto rn_g1(unsigned n) -> ValueMap
{
    require_order(n);
    std::vector<Value> values;
    for (Vertex v = 0; v < 4 * (n + 1); ++v) {
        auto [x, p] = RnVertex::from_index(v);
        values.push_back((x + p) % 2);
    }
    return ValueMap(std::move(values));
}

auto rn_g2(unsigned n) -> ValueMap
{
    require_order(n);
    std::vector<Value> values;
    for (Vertex v = 0; v < 4 * (n + 1); ++v)
        values.push_back(RnVertex::from_index(v).level);
    return ValueMap(std::move(values));
}

auto grundy_gap(const Digraph &d) -> std::optional<Value>
{
    auto all = enumerate_grundy(d);
    if (all.empty())
        return std::nullopt;
    auto [lo, hi] = std::minmax_element(all.begin(), all.end(), [](const ValueMap &a, const ValueMap &b) {
        return a.max_value() < b.max_value();
    });
    return hi->max_value() - lo->max_value();
}

} // namespace sgf
