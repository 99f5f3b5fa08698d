#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sgf {

using Vertex = std::uint32_t;
using Value = std::uint32_t;

struct Arc {
    Vertex tail = 0;
    Vertex head = 0;

    friend auto operator<=>(const Arc &, const Arc &) = default;
};

/// Subset of the vertex indices 0..universe-1, stored as a packed bitmask.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe);
    VertexSet(std::size_t universe, std::initializer_list<Vertex> members);

    static auto from_members(std::size_t universe, std::span<const Vertex> members) -> VertexSet;
    /// Requires universe <= 64.
    static auto from_mask(std::size_t universe, std::uint64_t mask) -> VertexSet;
    static auto full(std::size_t universe) -> VertexSet;

    auto universe() const -> std::size_t { return universe_; }
    auto contains(Vertex v) const -> bool;
    void insert(Vertex v);
    void erase(Vertex v);

    auto size() const -> std::size_t;
    auto empty() const -> bool;
    auto members() const -> std::vector<Vertex>;
    auto intersects(const VertexSet &other) const -> bool;
    auto complement() const -> VertexSet;

    /// Low 64 bits of the mask; throws ResourceError when universe > 64.
    auto to_mask() const -> std::uint64_t;

    auto operator|=(const VertexSet &other) -> VertexSet &;
    auto operator&=(const VertexSet &other) -> VertexSet &;
    auto operator-=(const VertexSet &other) -> VertexSet &;

    friend auto operator|(VertexSet a, const VertexSet &b) -> VertexSet { return a |= b; }
    friend auto operator&(VertexSet a, const VertexSet &b) -> VertexSet { return a &= b; }
    friend auto operator-(VertexSet a, const VertexSet &b) -> VertexSet { return a -= b; }
    friend auto operator==(const VertexSet &, const VertexSet &) -> bool = default;

private:
    void check(Vertex v) const;

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Witness order for sets: cardinality first, then the mask read as an integer.
auto cardinality_then_mask_less(const VertexSet &a, const VertexSet &b) -> bool;

/// Total function from vertices to non-negative integers.
class ValueMap {
public:
    ValueMap() = default;
    explicit ValueMap(std::vector<Value> values) : values_(std::move(values)) {}
    ValueMap(std::initializer_list<Value> values) : values_(values) {}

    auto size() const -> std::size_t { return values_.size(); }
    auto empty() const -> bool { return values_.empty(); }
    auto operator[](Vertex v) const -> Value { return values_[v]; }
    auto at(Vertex v) const -> Value { return values_.at(v); }
    auto values() const -> const std::vector<Value> & { return values_; }
    auto begin() const { return values_.begin(); }
    auto end() const { return values_.end(); }

    /// 0 on the empty map.
    auto max_value() const -> Value;
    auto min_value() const -> Value;
    /// {v : value(v) == k} as a set over 0..size()-1.
    auto preimage(Value k) const -> VertexSet;

    friend auto operator<=>(const ValueMap &, const ValueMap &) = default;

private:
    std::vector<Value> values_;
};

/// Finite digraph on dense vertex indices. Arcs are kept sorted and unique.
class Digraph {
public:
    Digraph() = default;
    Digraph(std::size_t order, std::span<const Arc> arcs, std::vector<std::string> labels = {});

    auto order() const -> std::size_t { return order_; }
    auto arc_count() const -> std::size_t { return arcs_.size(); }
    auto arcs() const -> const std::vector<Arc> & { return arcs_; }

    auto successors(Vertex v) const -> std::span<const Vertex> { return out_.at(v); }
    auto predecessors(Vertex v) const -> std::span<const Vertex> { return in_.at(v); }
    auto out_set(Vertex v) const -> const VertexSet & { return out_set_.at(v); }
    auto in_set(Vertex v) const -> const VertexSet & { return in_set_.at(v); }
    auto out_degree(Vertex v) const -> std::size_t { return out_.at(v).size(); }

    auto has_arc(Vertex tail, Vertex head) const -> bool { return out_set_.at(tail).contains(head); }
    auto has_loop(Vertex v) const -> bool { return has_arc(v, v); }
    auto has_loops() const -> bool;

    auto labels() const -> const std::vector<std::string> & { return labels_; }
    /// Display name: the stored label, or the decimal index when unlabeled.
    auto name(Vertex v) const -> std::string;

    auto vertices() const -> VertexSet { return VertexSet::full(order_); }
    auto no_vertices() const -> VertexSet { return VertexSet(order_); }

    friend auto operator==(const Digraph &a, const Digraph &b) -> bool
    {
        return a.order_ == b.order_ && a.arcs_ == b.arcs_ && a.labels_ == b.labels_;
    }

private:
    std::size_t order_ = 0;
    std::vector<Arc> arcs_;
    std::vector<std::string> labels_;
    std::vector<std::vector<Vertex>> out_, in_;
    std::vector<VertexSet> out_set_, in_set_;
};

/// Builds a digraph, dropping repeated arcs. Throws InputError on an endpoint >= order
/// or a label list of the wrong length.
auto make_digraph(std::size_t order, std::span<const Arc> arcs, std::vector<std::string> labels = {})
    -> Digraph;
auto make_digraph(std::size_t order, std::initializer_list<Arc> arcs) -> Digraph;

struct InducedSubdigraph {
    Digraph digraph;
    std::vector<Vertex> new_to_old;
    std::vector<std::optional<Vertex>> old_to_new;
};

auto induced_subdigraph(const Digraph &d, const VertexSet &keep) -> InducedSubdigraph;

auto is_independent(const Digraph &d, const VertexSet &set) -> bool;

/// Smallest natural number not present in `values`.
auto mex(std::span<const Value> values) -> Value;

} // namespace sgf
