#include "sgf/solvers.hpp"
#include "sgf/checkers.hpp"
#include "sgf/errors.hpp"

#include <bit>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace sgf {

namespace {
    using Mask = std::uint64_t;

    auto bit(unsigned v) -> Mask { return Mask{1} << v; }

    auto low_bits(unsigned count) -> Mask { return count >= 64 ? ~Mask{0} : bit(count) - 1; }

    auto popcount(Mask m) -> int { return std::popcount(m); }

    void guard(const Digraph &d, std::size_t limit, const char *who)
    {
        if (d.order() > limit)
            throw ResourceError(std::string(who) + ": order " + std::to_string(d.order())
                                + " exceeds the limit of " + std::to_string(limit));
    }

    struct MaskDigraph {
        unsigned n = 0;
        std::vector<Mask> out, in;
        Mask loops = 0;

        explicit MaskDigraph(const Digraph &d) : n(static_cast<unsigned>(d.order())), out(n, 0), in(n, 0)
        {
            for (const auto &[t, h] : d.arcs()) {
                out[t] |= bit(h);
                in[h] |= bit(t);
                if (t == h)
                    loops |= bit(t);
            }
        }
    };

    enum class SetProperty { Kernel, SemiKernel };

    // Depth-first search over the members of `within`, deciding the highest index first
    // and trying exclusion before inclusion, so the first set found of a given size is the
    // one with the smallest mask.
    class SetSearch {
    public:
        SetSearch(const MaskDigraph &g, Mask within, SetProperty property) :
            g_(g), within_(within), property_(property)
        {
            for (unsigned v = 0; v < g_.n; ++v)
                if (within_ & bit(v))
                    order_.push_back(v);
            // Highest index decided first.
            std::reverse(order_.begin(), order_.end());
        }

        // Exactly `target` members, or any size when target < 0.
        auto run(int target) -> std::optional<Mask>
        {
            target_ = target;
            Mask found = 0;
            if (dfs(0, 0, within_, found))
                return found;
            return std::nullopt;
        }

        // Every matching set in increasing mask order until `visit` returns false.
        void run_all(const std::function<bool(Mask)> &visit)
        {
            target_ = -1;
            visit_ = &visit;
            Mask found = 0;
            dfs(0, 0, within_, found);
            visit_ = nullptr;
        }

        std::uint64_t nodes = 0;

    private:
        auto nbrs(unsigned v) const -> Mask { return (g_.out[v] | g_.in[v]) & within_; }

        auto consistent(Mask inc, Mask undecided) const -> bool
        {
            Mask blocked = g_.loops & undecided;
            for (Mask m = inc; m != 0; m &= m - 1)
                blocked |= nbrs(static_cast<unsigned>(std::countr_zero(m))) & undecided;
            Mask available = inc | (undecided & ~blocked);

            if (target_ >= 0) {
                int cnt = popcount(inc);
                if (cnt > target_ || cnt + popcount(undecided & ~blocked) < target_)
                    return false;
            }

            Mask outsiders = 0;
            if (property_ == SetProperty::Kernel)
                outsiders = (within_ & ~inc & ~undecided) | blocked;
            else
                for (Mask m = inc; m != 0; m &= m - 1)
                    outsiders |= g_.out[static_cast<unsigned>(std::countr_zero(m))] & within_;

            for (Mask m = outsiders; m != 0; m &= m - 1) {
                auto z = static_cast<unsigned>(std::countr_zero(m));
                if ((g_.out[z] & available) == 0)
                    return false;
            }
            return true;
        }

        auto dfs(std::size_t depth, Mask inc, Mask undecided, Mask &found) -> bool
        {
            ++nodes;
            if (! consistent(inc, undecided))
                return false;
            if (depth == order_.size()) {
                if (property_ == SetProperty::SemiKernel && inc == 0)
                    return false;
                found = inc;
                return visit_ == nullptr || ! (*visit_)(inc);
            }
            unsigned v = order_[depth];
            Mask rest = undecided & ~bit(v);
            if (dfs(depth + 1, inc, rest, found))
                return true;
            bool includable = ! (g_.loops & bit(v)) && ! (nbrs(v) & inc);
            return includable && dfs(depth + 1, inc | bit(v), rest, found);
        }

        const MaskDigraph &g_;
        Mask within_;
        SetProperty property_;
        std::vector<unsigned> order_;
        int target_ = -1;
        const std::function<bool(Mask)> *visit_ = nullptr;
    };

    auto least_set(const Digraph &d, SetProperty property) -> SetSolveResult
    {
        MaskDigraph g(d);
        Mask all = low_bits(g.n);
        SetSolveResult result;
        int first = property == SetProperty::SemiKernel ? 1 : 0;
        for (int k = first; k <= static_cast<int>(g.n); ++k) {
            SetSearch search(g, all, property);
            auto found = search.run(k);
            result.nodes_explored += search.nodes;
            if (found) {
                result.found = true;
                result.witness = VertexSet::from_mask(d.order(), *found);
                break;
            }
        }
        return result;
    }

    auto has_set(const MaskDigraph &g, Mask within, SetProperty property) -> bool
    {
        SetSearch search(g, within, property);
        return search.run(-1).has_value();
    }

    [[noreturn]] void unsound(const char *who)
    {
        throw std::logic_error(std::string(who) + ": witness failed its checker");
    }

    // Backtracking over vertex values in index order with ascending values, so witnesses
    // come out in lexicographic order.
    class GrundySearch {
    public:
        explicit GrundySearch(const Digraph &d) : d_(d), values_(d.order(), 0), assigned_(d.order(), false) {}

        // Stops after the first map when `visit` returns false.
        void run(const std::function<bool(const ValueMap &)> &visit)
        {
            visit_ = &visit;
            stop_ = false;
            dfs(0);
        }

        std::uint64_t nodes = 0;

    private:
        auto vertex_ok(Vertex w) const -> bool
        {
            Value gw = values_[w];
            std::size_t unassigned = 0;
            std::vector<bool> below(gw, false);
            for (Vertex y : d_.successors(w)) {
                if (! assigned_[y]) {
                    ++unassigned;
                    continue;
                }
                if (values_[y] == gw)
                    return false;
                if (values_[y] < gw)
                    below[values_[y]] = true;
            }
            std::size_t missing = 0;
            for (bool b : below)
                missing += b ? 0 : 1;
            return missing <= unassigned;
        }

        auto local_ok(Vertex v) const -> bool
        {
            if (! vertex_ok(v))
                return false;
            for (Vertex w : d_.predecessors(v))
                if (assigned_[w] && ! vertex_ok(w))
                    return false;
            return true;
        }

        void dfs(Vertex v)
        {
            ++nodes;
            if (v == d_.order()) {
                ValueMap g(values_);
                if (! is_grundy(d_, g))
                    unsound("grundy search");
                stop_ = ! (*visit_)(g);
                return;
            }
            auto limit = static_cast<Value>(d_.out_degree(v));
            assigned_[v] = true;
            for (Value k = 0; k <= limit && ! stop_; ++k) {
                values_[v] = k;
                if (local_ok(v))
                    dfs(v + 1);
            }
            assigned_[v] = false;
            values_[v] = 0;
        }

        const Digraph &d_;
        std::vector<Value> values_;
        std::vector<bool> assigned_;
        const std::function<bool(const ValueMap &)> *visit_ = nullptr;
        bool stop_ = false;
    };

    // Peels semi-kernels of successive residuals, lowest class first: an ordered partition
    // is semi-Grundy exactly when each class is a semi-kernel of the union of itself and
    // the classes above it. Residuals that cannot be exhausted are remembered.
    class SemiGrundySearch {
    public:
        explicit SemiGrundySearch(const Digraph &d) : g_(d) {}

        auto run() -> std::optional<ValueMap>
        {
            if (g_.loops != 0 || ! peel(low_bits(g_.n)))
                return std::nullopt;
            std::vector<Value> values(g_.n, 0);
            for (std::size_t k = 0; k < layers_.size(); ++k)
                for (Mask m = layers_[k]; m != 0; m &= m - 1)
                    values[static_cast<unsigned>(std::countr_zero(m))] = static_cast<Value>(k);
            return ValueMap(std::move(values));
        }

        std::uint64_t nodes = 0;

    private:
        auto peel(Mask residual) -> bool
        {
            ++nodes;
            if (residual == 0)
                return true;
            if (failed_.contains(residual))
                return false;
            SetSearch search(g_, residual, SetProperty::SemiKernel);
            bool done = false;
            search.run_all([&](Mask s) {
                layers_.push_back(s);
                if (peel(residual & ~s)) {
                    done = true;
                    return false;
                }
                layers_.pop_back();
                return true;
            });
            nodes += search.nodes;
            if (! done)
                failed_.insert(residual);
            return done;
        }

        MaskDigraph g_;
        std::vector<Mask> layers_;
        std::unordered_set<Mask> failed_;
    };

    // Visits every induced subdigraph (as a vertex mask, empty set excluded) until `test`
    // fails on one of them.
    auto all_subsets(const Digraph &d, SetProperty property) -> bool
    {
        MaskDigraph g(d);
        Mask limit = bit(g.n);
        for (Mask x = 1; x < limit; ++x)
            if (! has_set(g, x, property))
                return false;
        return true;
    }
}

auto find_semi_kernel(const Digraph &d) -> SetSolveResult
{
    guard(d, max_solver_order, "find_semi_kernel");
    auto result = least_set(d, SetProperty::SemiKernel);
    if (result.found && ! is_semi_kernel(d, *result.witness))
        unsound("find_semi_kernel");
    return result;
}

auto find_kernel(const Digraph &d) -> SetSolveResult
{
    guard(d, max_solver_order, "find_kernel");
    auto result = least_set(d, SetProperty::Kernel);
    if (result.found && ! is_kernel(d, *result.witness))
        unsound("find_kernel");
    return result;
}

auto is_kernel_perfect(const Digraph &d) -> bool
{
    guard(d, max_hereditary_order, "is_kernel_perfect");
    return all_subsets(d, SetProperty::Kernel);
}

auto has_hereditary_semi_kernel(const Digraph &d) -> bool
{
    guard(d, max_hereditary_order, "has_hereditary_semi_kernel");
    return all_subsets(d, SetProperty::SemiKernel);
}

auto find_grundy(const Digraph &d) -> MapSolveResult
{
    guard(d, max_solver_order, "find_grundy");
    MapSolveResult result;
    GrundySearch search(d);
    search.run([&](const ValueMap &g) {
        result.found = true;
        result.witness = g;
        return false;
    });
    result.nodes_explored = search.nodes;
    return result;
}

auto find_semi_grundy(const Digraph &d) -> MapSolveResult
{
    guard(d, max_solver_order, "find_semi_grundy");
    MapSolveResult result;
    SemiGrundySearch search(d);
    result.witness = search.run();
    result.found = result.witness.has_value();
    result.nodes_explored = search.nodes;
    if (result.found && ! is_semi_grundy(d, *result.witness))
        unsound("find_semi_grundy");
    return result;
}

auto enumerate_grundy(const Digraph &d) -> std::vector<ValueMap>
{
    guard(d, max_enumeration_order, "enumerate_grundy");
    std::vector<ValueMap> all;
    GrundySearch search(d);
    search.run([&](const ValueMap &g) {
        all.push_back(g);
        return true;
    });
    return all;
}

} // namespace sgf
