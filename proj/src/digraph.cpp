#include "sgf/digraph.hpp"
#include "sgf/errors.hpp"

#include <algorithm>
#include <bit>

namespace sgf {

namespace {
    constexpr std::size_t word_bits = 64;

    auto words_for(std::size_t universe) -> std::size_t { return (universe + word_bits - 1) / word_bits; }
}

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_(words_for(universe), 0) {}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members) : VertexSet(universe)
{
    for (Vertex v : members)
        insert(v);
}

auto VertexSet::from_members(std::size_t universe, std::span<const Vertex> members) -> VertexSet
{
    VertexSet s(universe);
    for (Vertex v : members)
        s.insert(v);
    return s;
}

auto VertexSet::from_mask(std::size_t universe, std::uint64_t mask) -> VertexSet
{
    if (universe > word_bits)
        throw ResourceError("from_mask: universe exceeds 64 vertices");
    if (universe < word_bits && (mask >> universe) != 0)
        throw InputError("from_mask: mask has bits beyond the universe");
    VertexSet s(universe);
    if (universe > 0)
        s.words_[0] = mask;
    return s;
}

auto VertexSet::full(std::size_t universe) -> VertexSet
{
    VertexSet s(universe);
    for (auto &w : s.words_)
        w = ~std::uint64_t{0};
    if (auto tail = universe % word_bits; tail != 0)
        s.words_.back() = (std::uint64_t{1} << tail) - 1;
    return s;
}

void VertexSet::check(Vertex v) const
{
    if (v >= universe_)
        throw InputError("vertex " + std::to_string(v) + " outside a set over " + std::to_string(universe_)
                         + " vertices");
}

auto VertexSet::contains(Vertex v) const -> bool
{
    return v < universe_ && ((words_[v / word_bits] >> (v % word_bits)) & 1U);
}

void VertexSet::insert(Vertex v)
{
    check(v);
    words_[v / word_bits] |= std::uint64_t{1} << (v % word_bits);
}

void VertexSet::erase(Vertex v)
{
    check(v);
    words_[v / word_bits] &= ~(std::uint64_t{1} << (v % word_bits));
}

auto VertexSet::size() const -> std::size_t
{
    std::size_t n = 0;
    for (auto w : words_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

auto VertexSet::empty() const -> bool
{
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

auto VertexSet::members() const -> std::vector<Vertex>
{
    std::vector<Vertex> result;
    for (std::size_t i = 0; i < words_.size(); ++i)
        for (auto w = words_[i]; w != 0; w &= w - 1)
            result.push_back(static_cast<Vertex>(i * word_bits + static_cast<std::size_t>(std::countr_zero(w))));
    return result;
}

auto VertexSet::intersects(const VertexSet &other) const -> bool
{
    auto n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (words_[i] & other.words_[i])
            return true;
    return false;
}

auto VertexSet::complement() const -> VertexSet
{
    return full(universe_) - *this;
}

auto VertexSet::to_mask() const -> std::uint64_t
{
    if (universe_ > word_bits)
        throw ResourceError("to_mask: universe exceeds 64 vertices");
    return words_.empty() ? 0 : words_[0];
}

auto VertexSet::operator|=(const VertexSet &other) -> VertexSet &
{
    if (other.universe_ != universe_)
        throw InputError("set union over different universes");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] |= other.words_[i];
    return *this;
}

auto VertexSet::operator&=(const VertexSet &other) -> VertexSet &
{
    if (other.universe_ != universe_)
        throw InputError("set intersection over different universes");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= other.words_[i];
    return *this;
}

auto VertexSet::operator-=(const VertexSet &other) -> VertexSet &
{
    if (other.universe_ != universe_)
        throw InputError("set difference over different universes");
    for (std::size_t i = 0; i < words_.size(); ++i)
        words_[i] &= ~other.words_[i];
    return *this;
}

auto cardinality_then_mask_less(const VertexSet &a, const VertexSet &b) -> bool
{
    auto sa = a.size(), sb = b.size();
    if (sa != sb)
        return sa < sb;
    auto ma = a.members(), mb = b.members();
    // Compare as integers: the highest differing bit decides.
    return std::lexicographical_compare(ma.rbegin(), ma.rend(), mb.rbegin(), mb.rend());
}

auto ValueMap::max_value() const -> Value
{
    return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

auto ValueMap::min_value() const -> Value
{
    return values_.empty() ? 0 : *std::min_element(values_.begin(), values_.end());
}

auto ValueMap::preimage(Value k) const -> VertexSet
{
    VertexSet s(values_.size());
    for (std::size_t v = 0; v < values_.size(); ++v)
        if (values_[v] == k)
            s.insert(static_cast<Vertex>(v));
    return s;
}

Digraph::Digraph(std::size_t order, std::span<const Arc> arcs, std::vector<std::string> labels) :
    order_(order),
    arcs_(arcs.begin(), arcs.end()),
    labels_(std::move(labels)),
    out_(order),
    in_(order),
    out_set_(order, VertexSet(order)),
    in_set_(order, VertexSet(order))
{
    if (! labels_.empty() && labels_.size() != order)
        throw InputError("label count " + std::to_string(labels_.size()) + " does not match order "
                         + std::to_string(order));
    for (const auto &a : arcs_)
        if (a.tail >= order || a.head >= order)
            throw InputError("arc (" + std::to_string(a.tail) + "," + std::to_string(a.head)
                             + ") has an endpoint outside 0.." + std::to_string(order) + "-1");

    std::sort(arcs_.begin(), arcs_.end());
    arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());

    for (const auto &a : arcs_) {
        out_[a.tail].push_back(a.head);
        in_[a.head].push_back(a.tail);
        out_set_[a.tail].insert(a.head);
        in_set_[a.head].insert(a.tail);
    }
}

auto Digraph::has_loops() const -> bool
{
    return std::any_of(arcs_.begin(), arcs_.end(), [](const Arc &a) { return a.tail == a.head; });
}

auto Digraph::name(Vertex v) const -> std::string
{
    if (v >= order_)
        throw InputError("vertex " + std::to_string(v) + " out of range");
    return labels_.empty() ? std::to_string(v) : labels_[v];
}

auto make_digraph(std::size_t order, std::span<const Arc> arcs, std::vector<std::string> labels) -> Digraph
{
    return Digraph(order, arcs, std::move(labels));
}

auto make_digraph(std::size_t order, std::initializer_list<Arc> arcs) -> Digraph
{
    return Digraph(order, std::span<const Arc>(arcs.begin(), arcs.size()));
}

auto induced_subdigraph(const Digraph &d, const VertexSet &keep) -> InducedSubdigraph
{
    if (keep.universe() != d.order())
        throw InputError("induced_subdigraph: set universe does not match digraph order");

    InducedSubdigraph result;
    result.old_to_new.assign(d.order(), std::nullopt);
    result.new_to_old = keep.members();
    for (std::size_t i = 0; i < result.new_to_old.size(); ++i)
        result.old_to_new[result.new_to_old[i]] = static_cast<Vertex>(i);

    std::vector<Arc> arcs;
    for (const auto &a : d.arcs())
        if (result.old_to_new[a.tail] && result.old_to_new[a.head])
            arcs.push_back({*result.old_to_new[a.tail], *result.old_to_new[a.head]});

    std::vector<std::string> labels;
    if (! d.labels().empty())
        for (Vertex v : result.new_to_old)
            labels.push_back(d.labels()[v]);

    result.digraph = Digraph(result.new_to_old.size(), arcs, std::move(labels));
    return result;
}

auto is_independent(const Digraph &d, const VertexSet &set) -> bool
{
    for (Vertex v : set.members())
        if (d.out_set(v).intersects(set))
            return false;
    return true;
}

auto mex(std::span<const Value> values) -> Value
{
    // Only values below values.size() can matter.
    std::vector<bool> seen(values.size() + 1, false);
    for (Value v : values)
        if (v < seen.size())
            seen[v] = true;
    Value m = 0;
    while (seen[m])
        ++m;
    return m;
}

} // namespace sgf
