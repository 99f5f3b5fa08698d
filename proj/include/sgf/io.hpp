#pragma once

#include "sgf/digraph.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sgf {

using Json = nlohmann::ordered_json;

/// On-disk digraph: {"order": n, "arcs": [[t,h],...], "labels": [...], "metadata": {...}}.
/// labels and metadata are optional.
struct DigraphDocument {
    Digraph digraph;
    std::optional<Json> metadata;

    friend auto operator==(const DigraphDocument &, const DigraphDocument &) -> bool = default;
};

/// Throws InputError with line:column for syntax errors, and naming the offending arc for
/// range errors and repeated arcs.
auto parse_digraph_document(std::string_view text) -> DigraphDocument;
auto parse_digraph(std::string_view text) -> Digraph;

auto digraph_to_json(const Digraph &d) -> Json;
auto document_to_json(const DigraphDocument &doc) -> Json;
auto digraph_from_json(const Json &j, std::string_view where = "digraph") -> DigraphDocument;

/// Canonical text: keys in field order, arcs sorted, compact, trailing newline.
auto serialize_digraph(const DigraphDocument &doc) -> std::string;

/// A value map file is a JSON array of non-negative integers.
auto parse_value_map(std::string_view text) -> ValueMap;
auto value_map_from_json(const Json &j, std::string_view where = "value map") -> ValueMap;
auto value_map_to_json(const ValueMap &f) -> Json;

/// Comma-separated vertex indices, e.g. "0,2,5". Empty text is the empty set.
auto parse_vertex_list(std::string_view text, std::size_t order) -> VertexSet;
auto vertex_set_to_json(const VertexSet &s) -> Json;

/// {"base": digraph, "factors": [digraph, ...], "functions": [[...], ...],
///  "base_function": [...]}. "base" is omitted for cartesian-sum families; "functions" and
/// "base_function" are optional.
struct FamilyDocument {
    std::optional<Digraph> base;
    std::vector<Digraph> factors;
    std::vector<ValueMap> functions;
    std::optional<ValueMap> base_function;

    friend auto operator==(const FamilyDocument &, const FamilyDocument &) -> bool = default;
};

auto parse_family(std::string_view text) -> FamilyDocument;
auto serialize_family(const FamilyDocument &doc) -> std::string;

/// Deterministic DOT text; with a value map each node label reads "name:value".
auto export_dot(const Digraph &d, const ValueMap *values = nullptr) -> std::string;

} // namespace sgf
