#include "sgf/cli.hpp"
#include "sgf/checkers.hpp"
#include "sgf/constructions.hpp"
#include "sgf/errors.hpp"
#include "sgf/explorer.hpp"
#include "sgf/io.hpp"
#include "sgf/rn_family.hpp"
#include "sgf/solvers.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iterator>
#include <ostream>
#include <regex>
#include <sstream>

namespace sgf {

namespace {
    auto read_file(const std::string &path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw InputError("cannot open " + path);
        return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    }

    auto names(const Digraph &d, const VertexSet &s) -> Json
    {
        Json j = Json::array();
        for (Vertex v : s.members())
            j.push_back(d.name(v));
        return j;
    }

    auto set_result(const SetSolveResult &r) -> Json
    {
        Json j;
        j["found"] = r.found;
        j["witness"] = r.found ? vertex_set_to_json(*r.witness) : Json(nullptr);
        j["nodes_explored"] = r.nodes_explored;
        return j;
    }

    auto map_result(const MapSolveResult &r) -> Json
    {
        Json j;
        j["found"] = r.found;
        j["witness"] = r.found ? value_map_to_json(*r.witness) : Json(nullptr);
        j["nodes_explored"] = r.nodes_explored;
        return j;
    }

    auto certificate_json(const Certificate &c) -> Json
    {
        Json j;
        j["kind"] = certificate_kind_name(c.kind);
        j["subject"] = vertex_set_to_json(c.subject);
        if (c.set)
            j["set"] = vertex_set_to_json(*c.set);
        if (c.values)
            j["values"] = value_map_to_json(*c.values);
        if (c.kind == CertificateKind::no_kernel || c.kind == CertificateKind::no_grundy
            || c.kind == CertificateKind::no_semi_grundy)
            j["nodes_explored"] = c.nodes_explored;
        return j;
    }

    // Family functions, filled in by the semi-Grundy solver where the document has none.
    auto family_functions(const FamilyDocument &doc) -> std::optional<std::vector<ValueMap>>
    {
        if (! doc.functions.empty())
            return doc.functions;
        std::vector<ValueMap> funcs;
        for (const auto &f : doc.factors) {
            auto r = find_semi_grundy(f);
            if (! r.found)
                return std::nullopt;
            funcs.push_back(*r.witness);
        }
        return funcs;
    }

    auto emit(std::ostream &out, const Json &j, bool holds) -> int
    {
        out << j.dump(2) << '\n';
        return holds ? exit_holds : exit_fails;
    }

    struct Options {
        std::string graph_file;
        std::string function_file;
        std::string family_file;
        std::string set_text;
        std::string property;
        std::string construction;
        unsigned rn_order = 2;
        bool emit_dot = false;
        std::string predicate;
        std::size_t max_order = 4;
        unsigned workers = 1;
        bool iso = false;
        bool loops = false;
        Value gap = 1;
        std::string theorem;
        bool quiet = false;
    };

    auto run_check(const Options &o, std::ostream &out) -> int
    {
        auto d = parse_digraph(read_file(o.graph_file));
        Json j;
        j["command"] = "check";
        j["property"] = o.property;
        bool holds = false;
        if (o.property == "kernel" || o.property == "semi-kernel") {
            auto s = parse_vertex_list(o.set_text, d.order());
            holds = o.property == "kernel" ? is_kernel(d, s) : is_semi_kernel(d, s);
            j["set"] = vertex_set_to_json(s);
        }
        else {
            if (o.function_file.empty())
                throw InputError("check " + o.property + " needs -f FILE");
            auto f = parse_value_map(read_file(o.function_file));
            if (f.size() != d.order())
                throw InputError("value map has " + std::to_string(f.size()) + " values for a digraph of order "
                                 + std::to_string(d.order()));
            holds = o.property == "grundy" ? is_grundy(d, f) : is_semi_grundy(d, f);
            j["values"] = value_map_to_json(f);
        }
        j["holds"] = holds;
        return emit(out, j, holds);
    }

    auto run_solve(const Options &o, std::ostream &out) -> int
    {
        auto d = parse_digraph(read_file(o.graph_file));
        Json j;
        j["command"] = "solve";
        j["problem"] = o.property;
        bool found = false;
        if (o.property == "kernel" || o.property == "semi-kernel") {
            auto r = o.property == "kernel" ? find_kernel(d) : find_semi_kernel(d);
            j.update(set_result(r));
            found = r.found;
        }
        else if (o.property == "grundy" || o.property == "semi-grundy") {
            auto r = o.property == "grundy" ? find_grundy(d) : find_semi_grundy(d);
            j.update(map_result(r));
            found = r.found;
        }
        else {
            found = o.property == "kernel-perfect" ? is_kernel_perfect(d) : has_hereditary_semi_kernel(d);
            j["holds"] = found;
        }
        return emit(out, j, found);
    }

    auto run_construct(const Options &o, std::ostream &out) -> int
    {
        Json j;
        j["command"] = "construct";
        j["construction"] = o.construction;
        const auto &c = o.construction;

        if (c == "normalize") {
            if (o.function_file.empty())
                throw InputError("construct normalize needs -f FILE");
            j["values"] = value_map_to_json(normalize(parse_value_map(read_file(o.function_file))));
            return emit(out, j, true);
        }
        if (c == "layered-sg" || c == "layered-grundy") {
            if (o.graph_file.empty())
                throw InputError("construct " + c + " needs -g FILE");
            auto d = parse_digraph(read_file(o.graph_file));
            if (c == "layered-grundy") {
                auto g = layered_grundy(d);
                j["values"] = value_map_to_json(g);
                j["is_grundy"] = is_grundy(d, g);
                return emit(out, j, true);
            }
            auto r = layered_semi_grundy(d);
            j["ok"] = r.ok;
            j["layers"] = Json::array();
            for (const auto &layer : r.layers)
                j["layers"].push_back(vertex_set_to_json(layer));
            if (r.ok) {
                j["values"] = value_map_to_json(r.values);
                j["is_semi_grundy"] = is_semi_grundy(d, r.values);
            }
            else
                j["failed_residual"] = vertex_set_to_json(*r.failed_residual);
            return emit(out, j, r.ok);
        }

        if (o.family_file.empty())
            throw InputError("construct " + c + " needs --family FILE");
        auto doc = parse_family(read_file(o.family_file));
        auto funcs = family_functions(doc);
        if (! funcs) {
            j["ok"] = false;
            j["reason"] = "some factor has no semi-Grundy function";
            return emit(out, j, false);
        }
        j["functions"] = Json::array();
        for (const auto &f : *funcs)
            j["functions"].push_back(value_map_to_json(f));

        if (c == "sum") {
            auto sum = cartesian_sum(doc.factors);
            auto s = sum_semi_grundy(doc.factors, *funcs);
            Value expected = 0;
            for (const auto &f : *funcs)
                expected += f.max_value();
            j["sum"] = digraph_to_json(sum.digraph);
            j["tuples"] = sum.tuples;
            j["values"] = value_map_to_json(s);
            j["is_semi_grundy"] = is_semi_grundy(sum.digraph, s);
            j["max"] = s.max_value();
            j["expected_max"] = expected;
            return emit(out, j, j["is_semi_grundy"].get<bool>() && s.max_value() == expected);
        }

        if (! doc.base)
            throw InputError("construct " + c + " needs a family document with \"base\"");
        auto fa = cartesian_product(*doc.base, doc.factors);
        j["product"] = digraph_to_json(fa.product());

        if (c == "product-sg") {
            auto r = product_semi_grundy_kp(fa, *funcs);
            j["values"] = value_map_to_json(r.values);
            j["is_semi_grundy"] = is_semi_grundy(fa.product(), r.values);
            j["max"] = r.values.max_value();
            j["bound_holds"] = product_bound_check(*funcs, fa.base().order(), r.values);
            j["stages"] = Json::array();
            for (const auto &stage : r.trace.stages) {
                Json s;
                s["kernel"] = names(fa.base(), stage.kernel);
                s["layer"] = names(fa.product(), stage.layer);
                s["exhausted"] = names(fa.base(), stage.exhausted);
                s["minima"] = Json::array();
                for (const auto &[y, m] : stage.minima)
                    s["minima"].push_back({fa.base().name(y), m});
                j["stages"].push_back(s);
            }
            return emit(out, j, j["is_semi_grundy"].get<bool>() && j["bound_holds"].get<bool>());
        }
        if (c == "stratified-sg") {
            ValueMap f;
            if (doc.base_function)
                f = *doc.base_function;
            else if (auto r = find_semi_grundy(*doc.base); r.found)
                f = *r.witness;
            else {
                j["ok"] = false;
                j["reason"] = "base digraph has no semi-Grundy function";
                return emit(out, j, false);
            }
            auto s = stratified_product_semi_grundy(fa, f, *funcs);
            j["base_function"] = value_map_to_json(f);
            j["values"] = value_map_to_json(s);
            j["is_semi_grundy"] = is_semi_grundy(fa.product(), s);
            j["max"] = s.max_value();
            return emit(out, j, j["is_semi_grundy"].get<bool>());
        }
        throw InputError("unknown construction " + c);
    }

    auto run_rn(const Options &o, std::ostream &out) -> int
    {
        auto d = build_rn(o.rn_order);
        auto g1 = rn_g1(o.rn_order);
        auto g2 = rn_g2(o.rn_order);
        Json j;
        j["command"] = "rn";
        j["n"] = o.rn_order;
        j["digraph"] = digraph_to_json(d);
        j["g1"] = value_map_to_json(g1);
        j["g2"] = value_map_to_json(g2);
        bool ok1 = is_grundy(d, g1), ok2 = is_grundy(d, g2);
        j["g1_is_grundy"] = ok1;
        j["g2_is_grundy"] = ok2;
        j["max_difference"] = g2.max_value() - g1.max_value();
        if (o.emit_dot) {
            j["dot_g1"] = export_dot(d, &g1);
            j["dot_g2"] = export_dot(d, &g2);
        }
        return emit(out, j, ok1 && ok2);
    }

    auto run_explore(const Options &o, std::ostream &out, std::ostream &err) -> int
    {
        SearchSpec spec;
        std::string name = o.predicate;
        spec.gap = o.gap;
        // GRUNDY_GAP_AT_LEAST(k) carries its threshold inline.
        std::smatch m;
        static const std::regex with_arg(R"(([A-Za-z_\-]+)\((\d+)\))");
        if (std::regex_match(o.predicate, m, with_arg)) {
            name = m[1];
            spec.gap = static_cast<Value>(std::stoul(m[2]));
        }
        auto p = parse_predicate(name);
        if (! p)
            throw InputError("unknown predicate " + o.predicate);
        spec.predicate = *p;
        spec.max_order = o.max_order;
        spec.workers = o.workers;
        spec.iso_filter = o.iso;
        spec.include_loops = o.loops;

        auto report = find_witness(spec, o.quiet ? nullptr : &err);
        Json j;
        j["command"] = "explore";
        j["predicate"] = predicate_name(spec.predicate);
        if (spec.predicate == Predicate::grundy_gap_at_least)
            j["gap"] = spec.gap;
        j["max_order"] = spec.max_order;
        j["found"] = report.found;
        j["digraph"] = report.digraph ? digraph_to_json(*report.digraph) : Json(nullptr);
        j["certificates"] = Json::array();
        bool valid = true;
        for (const auto &c : report.certificates) {
            j["certificates"].push_back(certificate_json(c));
            valid = valid && validate_certificate(*report.digraph, c);
        }
        j["certificates_valid"] = valid;
        j["digraphs_scanned"] = report.digraphs_scanned;
        j["wall_time_seconds"] = report.wall_time.count();
        return emit(out, j, report.found && valid);
    }

    auto run_verify(const Options &o, std::ostream &out) -> int
    {
        auto t = parse_theorem(o.theorem);
        if (! t)
            throw InputError("unknown theorem " + o.theorem);
        auto r = verify_theorem(*t, o.max_order);
        Json j;
        j["command"] = "verify";
        j["theorem"] = theorem_name(r.theorem);
        j["max_order"] = o.max_order;
        j["holds"] = r.holds;
        j["digraphs_checked"] = r.digraphs_checked;
        j["premise_satisfied"] = r.premise_satisfied;
        j["counterexample"] = r.counterexample ? digraph_to_json(*r.counterexample) : Json(nullptr);
        return emit(out, j, r.holds);
    }

    auto run_dot(const Options &o, std::ostream &out) -> int
    {
        auto d = parse_digraph(read_file(o.graph_file));
        std::optional<ValueMap> f;
        if (! o.function_file.empty())
            f = parse_value_map(read_file(o.function_file));
        out << export_dot(d, f ? &*f : nullptr);
        return exit_holds;
    }
}

auto cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) -> int
{
    CLI::App app{"Kernels, semi-kernels, Grundy and semi-Grundy functions on digraphs", "sgf"};
    app.require_subcommand(1);
    Options o;

    auto *check = app.add_subcommand("check", "Check a set or value map against a property");
    check->add_option("property", o.property)->required()->check(
        CLI::IsMember({"kernel", "semi-kernel", "grundy", "semi-grundy"}));
    check->add_option("-g,--graph", o.graph_file, "Digraph document")->required();
    check->add_option("-s,--set", o.set_text, "Comma-separated vertex indices");
    check->add_option("-f,--function", o.function_file, "Value map file (JSON array)");

    auto *solve = app.add_subcommand("solve", "Exhaustive existence solvers");
    solve->add_option("problem", o.property)->required()->check(CLI::IsMember(
        {"kernel", "semi-kernel", "grundy", "semi-grundy", "kernel-perfect", "hereditary-sk"}));
    solve->add_option("-g,--graph", o.graph_file, "Digraph document")->required();

    auto *construct = app.add_subcommand("construct", "Constructive algorithms");
    construct->add_option("construction", o.construction)->required()->check(CLI::IsMember(
        {"layered-sg", "layered-grundy", "sum", "product-sg", "stratified-sg", "normalize"}));
    construct->add_option("-g,--graph", o.graph_file, "Digraph document");
    construct->add_option("-f,--function", o.function_file, "Value map file");
    construct->add_option("--family", o.family_file, "Family document");

    auto *rn = app.add_subcommand("rn", "Build R_n with its two Grundy functions");
    rn->add_option("n", o.rn_order)->required();
    rn->add_flag("--emit-dot", o.emit_dot, "Include DOT renderings");

    auto *explore = app.add_subcommand("explore", "Search small digraphs for a separating witness");
    explore->add_option("--predicate", o.predicate)->required();
    explore->add_option("--max-n", o.max_order)->required();
    explore->add_option("--workers", o.workers)->envname("SGF_WORKERS")->check(CLI::PositiveNumber);
    explore->add_option("--gap", o.gap, "Threshold for GRUNDY_GAP_AT_LEAST");
    explore->add_flag("--iso", o.iso, "Scan one digraph per isomorphism class");
    explore->add_flag("--loops", o.loops, "Include self-loops");
    explore->add_flag("-q,--quiet", o.quiet, "No progress on standard error");

    auto *verify = app.add_subcommand("verify", "Check an implication on all small digraphs");
    verify->add_option("theorem", o.theorem)->required();
    verify->add_option("--max-n", o.max_order)->required();

    auto *dot = app.add_subcommand("dot", "Export a digraph as DOT");
    dot->add_option("-g,--graph", o.graph_file, "Digraph document")->required();
    dot->add_option("-f,--function", o.function_file, "Value map file");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e) {
        app.exit(e, out, err);
        return exit_holds;
    }
    catch (const CLI::ParseError &e) {
        err << "sgf: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (check->parsed())
            return run_check(o, out);
        if (solve->parsed())
            return run_solve(o, out);
        if (construct->parsed())
            return run_construct(o, out);
        if (rn->parsed())
            return run_rn(o, out);
        if (explore->parsed())
            return run_explore(o, out, err);
        if (verify->parsed())
            return run_verify(o, out);
        if (dot->parsed())
            return run_dot(o, out);
    }
    catch (const ResourceError &e) {
        err << "sgf: " << e.what() << '\n';
        return exit_resource;
    }
    catch (const InputError &e) {
        err << "sgf: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const ContractError &e) {
        err << "sgf: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

} // namespace sgf
