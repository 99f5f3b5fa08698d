#include "sgf/constructions.hpp"
#include "sgf/checkers.hpp"
#include "sgf/errors.hpp"
#include "sgf/solvers.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

namespace sgf {

namespace {
    auto describe(const Digraph &d, const VertexSet &s) -> std::string
    {
        std::string out = "{";
        bool first = true;
        for (Vertex v : s.members()) {
            if (! first)
                out += ",";
            out += d.name(v);
            first = false;
        }
        return out + "}";
    }

    // Lifts a set over an induced subdigraph back to the parent digraph.
    auto lift(const InducedSubdigraph &sub, const VertexSet &local, std::size_t parent_order) -> VertexSet
    {
        VertexSet s(parent_order);
        for (Vertex v : local.members())
            s.insert(sub.new_to_old[v]);
        return s;
    }

    auto is_normalized(const ValueMap &s) -> bool { return normalize(s) == s; }
}

auto normalize(const ValueMap &s) -> ValueMap
{
    std::vector<Value> image(s.begin(), s.end());
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());

    std::vector<Value> out;
    out.reserve(s.size());
    for (Value v : s)
        out.push_back(static_cast<Value>(std::lower_bound(image.begin(), image.end(), v) - image.begin()));
    return ValueMap(std::move(out));
}

auto layered_semi_grundy(const Digraph &d) -> LayeredSemiGrundy
{
    LayeredSemiGrundy result;
    std::vector<Value> values(d.order(), 0);
    VertexSet residual = d.vertices();
    Value k = 0;
    while (! residual.empty()) {
        auto sub = induced_subdigraph(d, residual);
        auto sk = find_semi_kernel(sub.digraph);
        if (! sk.found) {
            result.failed_residual = residual;
            return result;
        }
        auto layer = lift(sub, *sk.witness, d.order());
        for (Vertex v : layer.members())
            values[v] = k;
        result.layers.push_back(layer);
        residual -= layer;
        ++k;
    }
    result.ok = true;
    result.values = ValueMap(std::move(values));
    return result;
}

auto layered_grundy(const Digraph &d) -> ValueMap
{
    std::vector<Value> values(d.order(), 0);
    VertexSet residual = d.vertices();
    Value k = 0;
    while (! residual.empty()) {
        auto sub = induced_subdigraph(d, residual);
        auto kernel = find_kernel(sub.digraph);
        if (! kernel.found)
            throw ContractError("layered_grundy: residual " + describe(d, residual) + " has no kernel");
        auto layer = lift(sub, *kernel.witness, d.order());
        for (Vertex v : layer.members())
            values[v] = k;
        residual -= layer;
        ++k;
    }
    return ValueMap(std::move(values));
}

auto CartesianSum::index_of(std::span<const Vertex> tuple) const -> Vertex
{
    auto it = std::lower_bound(tuples.begin(), tuples.end(), tuple, [](const auto &a, const auto &b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    });
    if (it == tuples.end() || ! std::equal(it->begin(), it->end(), tuple.begin(), tuple.end()))
        throw InputError("cartesian sum: no such coordinate tuple");
    return static_cast<Vertex>(it - tuples.begin());
}

auto cartesian_sum(std::span<const Digraph> factors) -> CartesianSum
{
    if (factors.empty())
        throw InputError("cartesian_sum: at least one factor is required");
    std::size_t total = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].order() == 0)
            throw InputError("cartesian_sum: factor " + std::to_string(i) + " is empty");
        total *= factors[i].order();
    }

    // Mixed radix, last factor least significant.
    std::vector<std::size_t> stride(factors.size(), 1);
    for (std::size_t i = factors.size() - 1; i > 0; --i)
        stride[i - 1] = stride[i] * factors[i].order();

    CartesianSum result;
    result.tuples.reserve(total);
    std::vector<Arc> arcs;
    for (std::size_t index = 0; index < total; ++index) {
        std::vector<Vertex> tuple(factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i)
            tuple[i] = static_cast<Vertex>((index / stride[i]) % factors[i].order());
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (Vertex head : factors[i].successors(tuple[i])) {
                auto moved = index + (static_cast<std::size_t>(head) - tuple[i]) * stride[i];
                arcs.push_back({static_cast<Vertex>(index), static_cast<Vertex>(moved)});
            }
        result.tuples.push_back(std::move(tuple));
    }
    result.digraph = Digraph(total, arcs);
    return result;
}

auto sum_semi_grundy(std::span<const Digraph> factors, std::span<const ValueMap> funcs) -> ValueMap
{
    if (factors.size() != funcs.size())
        throw InputError("sum_semi_grundy: one function per factor is required");
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (! is_semi_grundy(factors[i], funcs[i]))
            throw ContractError("sum_semi_grundy: function " + std::to_string(i) + " is not semi-Grundy");

    auto sum = cartesian_sum(factors);
    std::vector<Value> values;
    values.reserve(sum.tuples.size());
    for (const auto &tuple : sum.tuples) {
        Value total = 0;
        for (std::size_t i = 0; i < tuple.size(); ++i)
            total += funcs[i][tuple[i]];
        values.push_back(total);
    }
    return ValueMap(std::move(values));
}

FamilyAssignment::FamilyAssignment(Digraph base, std::vector<Digraph> factors) :
    base_(std::move(base)), factors_(std::move(factors))
{
    if (factors_.size() != base_.order())
        throw InputError("cartesian_product: " + std::to_string(factors_.size()) + " factors for a base of order "
                         + std::to_string(base_.order()));

    std::size_t total = 0;
    for (Vertex v = 0; v < base_.order(); ++v) {
        if (factors_[v].order() == 0)
            throw InputError("cartesian_product: factor of base vertex " + base_.name(v) + " is empty");
        offset_.push_back(static_cast<Vertex>(total));
        for (Vertex x = 0; x < factors_[v].order(); ++x)
            origin_.emplace_back(v, x);
        total += factors_[v].order();
    }

    std::vector<Arc> arcs;
    std::vector<std::string> labels;
    bool labelled = ! base_.labels().empty();
    for (Vertex v = 0; v < base_.order(); ++v) {
        for (const auto &[t, h] : factors_[v].arcs())
            arcs.push_back({offset_[v] + t, offset_[v] + h});
        if (labelled)
            for (Vertex x = 0; x < factors_[v].order(); ++x)
                labels.push_back(base_.name(v) + "_" + factors_[v].name(x));
    }
    for (const auto &[u, v] : base_.arcs())
        for (Vertex x = 0; x < factors_[u].order(); ++x)
            for (Vertex y = 0; y < factors_[v].order(); ++y)
                arcs.push_back({offset_[u] + x, offset_[v] + y});
    product_ = Digraph(total, arcs, std::move(labels));
}

auto FamilyAssignment::product_vertex(Vertex base_vertex, Vertex factor_vertex) const -> Vertex
{
    if (factor_vertex >= factor(base_vertex).order())
        throw InputError("product_vertex: factor vertex out of range");
    return offset_[base_vertex] + factor_vertex;
}

auto FamilyAssignment::block(Vertex base_vertex) const -> VertexSet
{
    VertexSet s(product_.order());
    for (Vertex x = 0; x < factor(base_vertex).order(); ++x)
        s.insert(offset_[base_vertex] + x);
    return s;
}

auto cartesian_product(const Digraph &base, std::vector<Digraph> factors) -> FamilyAssignment
{
    return FamilyAssignment(base, std::move(factors));
}

auto product_semi_grundy_kp(const FamilyAssignment &fa, std::span<const ValueMap> funcs) -> ProductSemiGrundy
{
    const auto &base = fa.base();
    const auto &product = fa.product();
    if (funcs.size() != base.order())
        throw InputError("product_semi_grundy_kp: one function per base vertex is required");
    for (Vertex v = 0; v < base.order(); ++v)
        if (! is_semi_grundy(fa.factor(v), funcs[v]))
            throw ContractError("product_semi_grundy_kp: function for " + base.name(v) + " is not semi-Grundy");
    if (! is_kernel_perfect(base))
        throw ContractError("product_semi_grundy_kp: base digraph is not kernel-perfect");

    ProductSemiGrundy result;
    std::vector<Value> values(product.order(), 0);
    VertexSet placed(product.order());
    VertexSet exhausted(base.order());
    Value stage = 0;

    while (exhausted.size() < base.order()) {
        auto sub = induced_subdigraph(base, exhausted.complement());
        auto kernel = find_kernel(sub.digraph);
        if (! kernel.found)
            throw std::logic_error("product_semi_grundy_kp: residual of a kernel-perfect base has no kernel");

        LayeringStage record{VertexSet(base.order()), VertexSet(product.order()), VertexSet(base.order()), {}};
        for (Vertex local : kernel.witness->members()) {
            Vertex y = sub.new_to_old[local];
            record.kernel.insert(y);

            const auto &fy = funcs[y];
            std::optional<Value> least;
            for (Vertex x = 0; x < fa.factor(y).order(); ++x)
                if (! placed.contains(fa.product_vertex(y, x)))
                    least = least ? std::min(*least, fy[x]) : fy[x];
            // y is not exhausted, so some factor vertex remains.
            record.minima.emplace_back(y, *least);
            for (Vertex x = 0; x < fa.factor(y).order(); ++x) {
                Vertex p = fa.product_vertex(y, x);
                if (! placed.contains(p) && fy[x] == *least)
                    record.layer.insert(p);
            }
        }

        for (Vertex p : record.layer.members())
            values[p] = stage;
        placed |= record.layer;
        for (Vertex v = 0; v < base.order(); ++v)
            if ((fa.block(v) - placed).empty())
                exhausted.insert(v);
        record.exhausted = exhausted;
        result.trace.stages.push_back(std::move(record));
        ++stage;
    }

    result.values = ValueMap(std::move(values));
    return result;
}

auto product_bound_check(std::span<const ValueMap> funcs, std::size_t base_order, const ValueMap &s) -> bool
{
    std::uint64_t bound = 0;
    for (const auto &f : funcs)
        bound += f.max_value();
    bound += base_order;
    // max(S) <= bound - 1, written to stay non-negative when base_order == 0.
    return std::uint64_t{s.max_value()} + 1 <= bound;
}

auto extract_factors(const FamilyAssignment &fa, const ValueMap &s) -> ExtractedFactors
{
    if (! is_semi_grundy(fa.product(), s))
        throw ContractError("extract_factors: the value map is not semi-Grundy on the product");
    auto normalized = normalize(s);

    ExtractedFactors result{VertexSet(fa.base().order()), {}};
    for (Vertex u = 0; u < fa.base().order(); ++u) {
        std::vector<Value> restriction;
        for (Vertex x = 0; x < fa.factor(u).order(); ++x) {
            Value value = normalized[fa.product_vertex(u, x)];
            if (value == 0)
                result.semi_kernel.insert(u);
            restriction.push_back(value);
        }
        result.functions.push_back(normalize(ValueMap(std::move(restriction))));
    }
    return result;
}

auto stratified_product_semi_grundy(const FamilyAssignment &fa, const ValueMap &f, std::span<const ValueMap> funcs)
    -> ValueMap
{
    const auto &base = fa.base();
    if (funcs.size() != base.order())
        throw InputError("stratified_product_semi_grundy: one function per base vertex is required");
    if (! is_semi_grundy(base, f))
        throw InputError("stratified_product_semi_grundy: base function is not semi-Grundy");
    if (! is_normalized(f))
        throw InputError("stratified_product_semi_grundy: base function is not normalized");
    for (Vertex u = 0; u < base.order(); ++u) {
        if (! is_semi_grundy(fa.factor(u), funcs[u]))
            throw InputError("stratified_product_semi_grundy: function for " + base.name(u) + " is not semi-Grundy");
        if (! is_normalized(funcs[u]))
            throw InputError("stratified_product_semi_grundy: function for " + base.name(u) + " is not normalized");
    }

    Value levels = base.order() == 0 ? 0 : f.max_value() + 1;
    std::vector<std::optional<Value>> level_max(levels);
    for (Vertex u = 0; u < base.order(); ++u) {
        auto &m = level_max[f[u]];
        Value mu = funcs[u].max_value();
        if (m && *m != mu)
            throw InputError("stratified_product_semi_grundy: factor maxima differ within level "
                             + std::to_string(f[u]));
        m = mu;
    }

    // prefix[i] = m_0 + ... + m_{i-1}
    std::vector<Value> prefix(levels + 1, 0);
    for (Value i = 0; i < levels; ++i)
        prefix[i + 1] = prefix[i] + *level_max[i];

    std::vector<Value> values(fa.product().order(), 0);
    for (Vertex p = 0; p < fa.product().order(); ++p) {
        auto [u, x] = fa.origin(p);
        Value i = f[u];
        values[p] = i == 0 ? funcs[u][x] : prefix[i] + f[u] + funcs[u][x];
    }
    return ValueMap(std::move(values));
}

} // namespace sgf
