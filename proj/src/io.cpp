#include "sgf/io.hpp"
#include "sgf/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <sstream>

namespace sgf {

namespace {
    auto position(std::string_view text, std::size_t byte) -> std::string
    {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            }
            else
                ++column;
        }
        return std::to_string(line) + ":" + std::to_string(column);
    }

    auto parse_json(std::string_view text) -> Json
    {
        try {
            return Json::parse(text.begin(), text.end());
        }
        catch (const nlohmann::json::parse_error &e) {
            throw InputError("syntax error at " + position(text, e.byte) + ": " + e.what());
        }
    }

    auto natural(const Json &j, const std::string &where) -> std::uint64_t
    {
        if (! j.is_number_unsigned())
            throw InputError(where + " must be a non-negative integer");
        return j.get<std::uint64_t>();
    }

    auto escape(const std::string &s) -> std::string
    {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\')
                out.push_back('\\');
            out.push_back(c);
        }
        return out;
    }
}

auto digraph_from_json(const Json &j, std::string_view where) -> DigraphDocument
{
    std::string at(where);
    if (! j.is_object())
        throw InputError(at + " must be an object");
    for (const auto &[key, _] : j.items())
        if (key != "order" && key != "arcs" && key != "labels" && key != "metadata")
            throw InputError(at + ": unknown field \"" + key + "\"");
    if (! j.contains("order") || ! j.contains("arcs"))
        throw InputError(at + " needs \"order\" and \"arcs\"");

    auto order = natural(j["order"], at + ".order");
    const auto &arcs_json = j["arcs"];
    if (! arcs_json.is_array())
        throw InputError(at + ".arcs must be an array");

    std::vector<Arc> arcs;
    std::map<Arc, std::size_t> seen;
    for (std::size_t i = 0; i < arcs_json.size(); ++i) {
        auto where_arc = at + ".arcs[" + std::to_string(i) + "]";
        const auto &a = arcs_json[i];
        if (! a.is_array() || a.size() != 2)
            throw InputError(where_arc + " must be a [tail, head] pair");
        auto t = natural(a[0], where_arc + "[0]");
        auto h = natural(a[1], where_arc + "[1]");
        if (t >= order || h >= order)
            throw InputError(where_arc + " = [" + std::to_string(t) + "," + std::to_string(h)
                             + "] has an endpoint outside 0.." + std::to_string(order) + "-1");
        Arc arc{static_cast<Vertex>(t), static_cast<Vertex>(h)};
        if (auto [it, fresh] = seen.emplace(arc, i); ! fresh)
            throw InputError(where_arc + " repeats " + at + ".arcs[" + std::to_string(it->second) + "]");
        arcs.push_back(arc);
    }

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const auto &l = j["labels"];
        if (! l.is_array() || l.size() != order)
            throw InputError(at + ".labels must be an array of " + std::to_string(order) + " strings");
        for (const auto &s : l) {
            if (! s.is_string())
                throw InputError(at + ".labels must contain strings");
            labels.push_back(s.get<std::string>());
        }
    }

    DigraphDocument doc{Digraph(order, arcs, std::move(labels)), std::nullopt};
    if (j.contains("metadata")) {
        if (! j["metadata"].is_object())
            throw InputError(at + ".metadata must be an object");
        doc.metadata = j["metadata"];
    }
    return doc;
}

auto parse_digraph_document(std::string_view text) -> DigraphDocument
{
    return digraph_from_json(parse_json(text));
}

auto parse_digraph(std::string_view text) -> Digraph
{
    return parse_digraph_document(text).digraph;
}

auto digraph_to_json(const Digraph &d) -> Json
{
    Json j;
    j["order"] = d.order();
    j["arcs"] = Json::array();
    for (const auto &[t, h] : d.arcs())
        j["arcs"].push_back({t, h});
    if (! d.labels().empty())
        j["labels"] = d.labels();
    return j;
}

auto document_to_json(const DigraphDocument &doc) -> Json
{
    auto j = digraph_to_json(doc.digraph);
    if (doc.metadata)
        j["metadata"] = *doc.metadata;
    return j;
}

auto serialize_digraph(const DigraphDocument &doc) -> std::string
{
    return document_to_json(doc).dump() + "\n";
}

auto value_map_from_json(const Json &j, std::string_view where) -> ValueMap
{
    std::string at(where);
    if (! j.is_array())
        throw InputError(at + " must be an array of non-negative integers");
    std::vector<Value> values;
    for (std::size_t i = 0; i < j.size(); ++i) {
        auto v = natural(j[i], at + "[" + std::to_string(i) + "]");
        if (v > std::numeric_limits<Value>::max())
            throw InputError(at + "[" + std::to_string(i) + "] is too large");
        values.push_back(static_cast<Value>(v));
    }
    return ValueMap(std::move(values));
}

auto parse_value_map(std::string_view text) -> ValueMap
{
    return value_map_from_json(parse_json(text));
}

auto value_map_to_json(const ValueMap &f) -> Json
{
    return Json(f.values());
}

auto parse_vertex_list(std::string_view text, std::size_t order) -> VertexSet
{
    VertexSet s(order);
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto item = text.substr(start, end - start);
        while (! item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (! item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw InputError("vertex list: \"" + std::string(item) + "\" is not a vertex index");
        if (v >= order)
            throw InputError("vertex list: " + std::to_string(v) + " is outside 0.." + std::to_string(order) + "-1");
        s.insert(static_cast<Vertex>(v));
        start = end + 1;
    }
    return s;
}

auto vertex_set_to_json(const VertexSet &s) -> Json
{
    return Json(s.members());
}

auto parse_family(std::string_view text) -> FamilyDocument
{
    auto j = parse_json(text);
    if (! j.is_object())
        throw InputError("family document must be an object");
    for (const auto &[key, _] : j.items())
        if (key != "base" && key != "factors" && key != "functions" && key != "base_function")
            throw InputError("family document: unknown field \"" + key + "\"");
    if (! j.contains("factors") || ! j["factors"].is_array())
        throw InputError("family document needs a \"factors\" array");

    FamilyDocument doc;
    if (j.contains("base"))
        doc.base = digraph_from_json(j["base"], "base").digraph;
    for (std::size_t i = 0; i < j["factors"].size(); ++i)
        doc.factors.push_back(digraph_from_json(j["factors"][i], "factors[" + std::to_string(i) + "]").digraph);
    if (doc.base && doc.factors.size() != doc.base->order())
        throw InputError("family document: " + std::to_string(doc.factors.size()) + " factors for a base of order "
                         + std::to_string(doc.base->order()));

    if (j.contains("functions")) {
        const auto &fs = j["functions"];
        if (! fs.is_array() || fs.size() != doc.factors.size())
            throw InputError("family document: \"functions\" needs one array per factor");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            auto where = "functions[" + std::to_string(i) + "]";
            auto f = value_map_from_json(fs[i], where);
            if (f.size() != doc.factors[i].order())
                throw InputError(where + " has " + std::to_string(f.size()) + " values for a factor of order "
                                 + std::to_string(doc.factors[i].order()));
            doc.functions.push_back(std::move(f));
        }
    }
    if (j.contains("base_function")) {
        if (! doc.base)
            throw InputError("family document: \"base_function\" requires \"base\"");
        auto f = value_map_from_json(j["base_function"], "base_function");
        if (f.size() != doc.base->order())
            throw InputError("base_function has the wrong number of values");
        doc.base_function = std::move(f);
    }
    return doc;
}

auto serialize_family(const FamilyDocument &doc) -> std::string
{
    Json j;
    if (doc.base)
        j["base"] = digraph_to_json(*doc.base);
    j["factors"] = Json::array();
    for (const auto &f : doc.factors)
        j["factors"].push_back(digraph_to_json(f));
    if (! doc.functions.empty()) {
        j["functions"] = Json::array();
        for (const auto &f : doc.functions)
            j["functions"].push_back(value_map_to_json(f));
    }
    if (doc.base_function)
        j["base_function"] = value_map_to_json(*doc.base_function);
    return j.dump() + "\n";
}

auto export_dot(const Digraph &d, const ValueMap *values) -> std::string
{
    if (values && values->size() != d.order())
        throw InputError("export_dot: value map does not match digraph order");
    std::ostringstream out;
    out << "digraph D {\n";
    for (Vertex v = 0; v < d.order(); ++v) {
        auto label = d.name(v);
        if (values)
            label += ":" + std::to_string((*values)[v]);
        out << "  v" << v << " [label=\"" << escape(label) << "\"];\n";
    }
    for (const auto &[t, h] : d.arcs())
        out << "  v" << t << " -> v" << h << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace sgf
