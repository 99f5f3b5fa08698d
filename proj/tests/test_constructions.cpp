#include "fixtures.hpp"
#include "oracles.hpp"

#include "sgf/checkers.hpp"
#include "sgf/constructions.hpp"
#include "sgf/errors.hpp"
#include "sgf/solvers.hpp"

#include <doctest.h>

#include <random>

using namespace sgf;

namespace {
const auto k1 = make_digraph(1, {});
const auto arc01 = make_digraph(2, {{0, 1}});
const auto cycle2 = make_digraph(2, {{0, 1}, {1, 0}});
const auto c3 = make_digraph(3, {{0, 1}, {1, 2}, {2, 0}});

// Base arc a -> b with a = 0, b = 1.
auto arc_ab() -> Digraph
{
    std::vector<Arc> arcs{{0, 1}};
    return make_digraph(2, arcs, {"a", "b"});
}

auto set(std::size_t n, std::initializer_list<Vertex> members) -> VertexSet { return VertexSet(n, members); }
}

TEST_CASE("normalize")
{
    CHECK(normalize({5, 2, 5}) == ValueMap{1, 0, 1});
    CHECK(normalize({0, 1, 2}) == ValueMap{0, 1, 2});
    CHECK(normalize({7}) == ValueMap{0});
    CHECK(normalize({}) == ValueMap{});
}

TEST_CASE("normalize is idempotent and keeps partitions and verdicts")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 2000; ++trial) {
        auto d = oracle::random_digraph(rng, 1 + rng() % 5, 0.3);
        std::vector<Value> values(d.order());
        for (auto &v : values)
            v = static_cast<Value>(rng() % 9);
        ValueMap s(values);
        auto n = normalize(s);
        CHECK(normalize(n) == n);
        CHECK(fixture::partition(n) == fixture::partition(s));
        CHECK(n.max_value() + 1 == coloring_classes(s));
        CHECK(is_semi_grundy(d, n) == is_semi_grundy(d, s));
    }
}

TEST_CASE("layered_semi_grundy examples")
{
    auto arc = layered_semi_grundy(arc01);
    REQUIRE(arc.ok);
    CHECK(arc.values == ValueMap{1, 0});
    CHECK(arc.layers == std::vector<VertexSet>{set(2, {1}), set(2, {0})});

    auto single = layered_semi_grundy(k1);
    REQUIRE(single.ok);
    CHECK(single.values == ValueMap{0});

    auto cycle = layered_semi_grundy(c3);
    CHECK_FALSE(cycle.ok);
    CHECK(cycle.failed_residual == c3.vertices());
}

TEST_CASE("layered_grundy examples")
{
    CHECK(layered_grundy(cycle2) == ValueMap{0, 1});
    CHECK(layered_grundy(make_digraph(3, {{0, 1}, {0, 2}, {1, 2}})) == ValueMap{2, 1, 0});
    CHECK(layered_grundy(k1) == ValueMap{0});
    CHECK_THROWS_AS(layered_grundy(c3), ContractError);
    // The kernel {3} leaves the 3-cycle behind.
    auto with_sink = make_digraph(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
    try {
        layered_grundy(with_sink);
        FAIL("expected a contract error");
    }
    catch (const ContractError &e) {
        CHECK(std::string(e.what()).find("{0,1,2}") != std::string::npos);
    }
}

TEST_CASE("layered constructions are valid on every hereditary digraph up to order 4")
{
    for (const auto &d : oracle::all_digraphs_up_to(4)) {
        auto layered = layered_semi_grundy(d);
        if (layered.ok)
            REQUIRE(is_semi_grundy(d, layered.values));
        if (has_hereditary_semi_kernel(d))
            REQUIRE(layered.ok);
        if (is_kernel_perfect(d))
            REQUIRE(is_grundy(d, layered_grundy(d)));
    }
}

TEST_CASE("cartesian_sum examples")
{
    std::vector<Digraph> two_arcs{arc01, arc01};
    auto sum = cartesian_sum(two_arcs);
    CHECK(sum.digraph.order() == 4);
    CHECK(sum.digraph.arc_count() == 4);
    CHECK(sum.tuples == std::vector<std::vector<Vertex>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(sum.digraph.has_arc(0, 1));
    CHECK(sum.digraph.has_arc(0, 2));
    CHECK(sum.digraph.has_arc(1, 3));
    CHECK(sum.digraph.has_arc(2, 3));
    CHECK(sum.index_of(std::vector<Vertex>{1, 0}) == 2);

    std::vector<Digraph> one{c3};
    CHECK(cartesian_sum(one).digraph == c3);

    std::vector<Digraph> points{k1, k1};
    auto trivial = cartesian_sum(points);
    CHECK(trivial.digraph.order() == 1);
    CHECK(trivial.digraph.arc_count() == 0);

    std::vector<Digraph> none;
    CHECK_THROWS_AS(cartesian_sum(none), InputError);
    std::vector<Digraph> with_empty{k1, make_digraph(0, {})};
    CHECK_THROWS_AS(cartesian_sum(with_empty), InputError);
}

TEST_CASE("cartesian_sum arcs move exactly one coordinate along a factor arc")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Digraph> factors;
        for (std::size_t i = 0, k = 1 + rng() % 3; i < k; ++i)
            factors.push_back(oracle::random_digraph(rng, 1 + rng() % 3, 0.4));
        auto sum = cartesian_sum(factors);
        for (Vertex a = 0; a < sum.digraph.order(); ++a)
            for (Vertex b = 0; b < sum.digraph.order(); ++b) {
                std::size_t changed = 0;
                bool along_arc = true;
                for (std::size_t i = 0; i < factors.size(); ++i)
                    if (sum.tuples[a][i] != sum.tuples[b][i]) {
                        ++changed;
                        along_arc = factors[i].has_arc(sum.tuples[a][i], sum.tuples[b][i]);
                    }
                REQUIRE(sum.digraph.has_arc(a, b) == (changed == 1 && along_arc));
            }
    }
}

TEST_CASE("sum_semi_grundy examples")
{
    std::vector<Digraph> two_arcs{arc01, arc01};
    std::vector<ValueMap> funcs{{1, 0}, {1, 0}};
    auto s = sum_semi_grundy(two_arcs, funcs);
    CHECK(s == ValueMap{2, 1, 1, 0});
    CHECK(is_semi_grundy(cartesian_sum(two_arcs).digraph, s));

    std::vector<Digraph> one{cycle2};
    std::vector<ValueMap> f{{0, 1}};
    CHECK(sum_semi_grundy(one, f) == f[0]);

    std::vector<Digraph> flat{make_digraph(2, {}), make_digraph(3, {})};
    std::vector<ValueMap> zeros{{0, 0}, {0, 0, 0}};
    CHECK(sum_semi_grundy(flat, zeros) == ValueMap(std::vector<Value>(6, 0)));

    std::vector<ValueMap> bad{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(sum_semi_grundy(two_arcs, bad), ContractError);
    CHECK_THROWS_AS(sum_semi_grundy(two_arcs, f), InputError);
}

TEST_CASE("sum_semi_grundy property on random factor tuples")
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Digraph> factors;
        std::vector<ValueMap> funcs;
        Value total = 0;
        for (std::size_t i = 0, k = 1 + rng() % 3; i < k; ++i) {
            auto [d, s] = fixture::random_semi_grundy_factor(rng, 4);
            total += s.max_value();
            factors.push_back(d);
            funcs.push_back(s);
        }
        auto s = sum_semi_grundy(factors, funcs);
        REQUIRE(is_semi_grundy(cartesian_sum(factors).digraph, s));
        REQUIRE(s.max_value() == total);
    }
}

TEST_CASE("cartesian_product examples")
{
    std::vector<Arc> none;
    auto single = cartesian_product(k1, {c3});
    CHECK(single.product() == c3);

    auto pair = cartesian_product(arc_ab(), {k1, k1});
    CHECK(pair.product().order() == 2);
    CHECK(pair.product().arcs() == std::vector<Arc>{{0, 1}});

    auto fig = fixture::figure7();
    CHECK(fig.family.product().order() == 9);
    // Factor arcs, then one arc per pair of factor vertices over each base arc.
    CHECK(fig.family.product().arc_count() == 3 + 3 + 4 + 4 + 6 + 6);
    CHECK(fig.family.product_vertex(3, 2) == 8);
    CHECK(fig.family.origin(5) == std::pair<Vertex, Vertex>{2, 1});
    CHECK(fig.family.block(1) == set(9, {2, 3}));
    CHECK(fig.family.product().name(8) == "d_2");

    CHECK_THROWS_AS(cartesian_product(arc_ab(), {k1}), InputError);
    CHECK_THROWS_AS(cartesian_product(arc_ab(), {k1, make_digraph(0, none)}), InputError);
}

TEST_CASE("cartesian_product arcs follow the definition")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        auto base = oracle::random_digraph(rng, 1 + rng() % 4, 0.4);
        std::vector<Digraph> factors;
        for (Vertex v = 0; v < base.order(); ++v)
            factors.push_back(oracle::random_digraph(rng, 1 + rng() % 3, 0.4));
        auto fa = cartesian_product(base, factors);
        const auto &p = fa.product();
        for (Vertex a = 0; a < p.order(); ++a)
            for (Vertex b = 0; b < p.order(); ++b) {
                auto [u, x] = fa.origin(a);
                auto [v, y] = fa.origin(b);
                bool expected = u == v ? factors[u].has_arc(x, y) : base.has_arc(u, v);
                REQUIRE(p.has_arc(a, b) == expected);
            }
    }
}

TEST_CASE("product_semi_grundy_kp on the pictured instance")
{
    auto fig = fixture::figure7();
    auto result = product_semi_grundy_kp(fig.family, fig.functions);
    const auto &p = fig.family.product();

    // a0 a1 b0 b1 c0 c1 d0 d1 d2
    CHECK(result.values == ValueMap{0, 1, 5, 6, 3, 4, 0, 1, 2});
    CHECK(is_semi_grundy(p, result.values));
    CHECK(product_bound_check(fig.functions, 4, result.values));

    const auto &stages = result.trace.stages;
    REQUIRE(stages.size() == 7);
    CHECK(stages[0].kernel == set(4, {0, 3}));
    CHECK(stages[0].layer == set(9, {0, 6}));
    CHECK(stages[0].exhausted.empty());
    CHECK(stages[0].minima == std::vector<std::pair<Vertex, Value>>{{0, 0}, {3, 0}});
    CHECK(stages[1].kernel == set(4, {0, 3}));
    CHECK(stages[1].layer == set(9, {1, 7}));
    CHECK(stages[1].exhausted == set(4, {0}));
    CHECK(stages[2].kernel == set(4, {3}));
    CHECK(stages[2].layer == set(9, {8}));
    CHECK(stages[2].minima == std::vector<std::pair<Vertex, Value>>{{3, 2}});
    CHECK(stages[3].layer == set(9, {4}));
    CHECK(stages[4].layer == set(9, {5}));
    CHECK(stages[5].kernel == set(4, {1}));
    CHECK(stages[5].layer == set(9, {2}));
    CHECK(stages[6].layer == set(9, {3}));
    CHECK(stages[6].exhausted == set(4, {0, 1, 2, 3}));
}

TEST_CASE("product_semi_grundy_kp small cases and errors")
{
    std::vector<ValueMap> zeros{{0}, {0}};
    auto pair = product_semi_grundy_kp(cartesian_product(arc_ab(), {k1, k1}), zeros);
    CHECK(pair.values == ValueMap{1, 0});
    REQUIRE(pair.trace.stages.size() == 2);
    CHECK(pair.trace.stages[0].kernel == set(2, {1}));
    CHECK(pair.trace.stages[1].kernel == set(2, {0}));
    CHECK(product_bound_check(zeros, 2, pair.values));

    auto chain = make_digraph(3, {{2, 1}, {1, 0}});
    std::vector<ValueMap> one{{1, 3, 5}};
    auto single = product_semi_grundy_kp(cartesian_product(k1, {chain}), one);
    CHECK(fixture::partition(single.values) == fixture::partition(one[0]));
    CHECK(single.values == ValueMap{0, 1, 2});

    std::vector<ValueMap> three{{0}, {0}, {0}};
    CHECK_THROWS_AS(product_semi_grundy_kp(cartesian_product(c3, {k1, k1, k1}), three), ContractError);
    std::vector<ValueMap> invalid{{0, 1}, {0}};
    CHECK_THROWS_AS(product_semi_grundy_kp(cartesian_product(arc_ab(), {arc01, k1}), invalid), ContractError);
}

TEST_CASE("product_bound_check arithmetic")
{
    auto fig = fixture::figure7();
    std::vector<Value> eight(9, 0);
    eight[0] = 8;
    CHECK(product_bound_check(fig.functions, 4, ValueMap(eight)));
    eight[0] = 9;
    CHECK_FALSE(product_bound_check(fig.functions, 4, ValueMap(eight)));

    std::vector<ValueMap> point{{0}};
    CHECK(product_bound_check(point, 1, {0}));
    CHECK_FALSE(product_bound_check(point, 1, {1}));
}

TEST_CASE("product_semi_grundy_kp property on random kernel-perfect bases")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        auto base = fixture::random_kernel_perfect(rng, 4);
        std::vector<Digraph> factors;
        std::vector<ValueMap> funcs;
        for (Vertex v = 0; v < base.order(); ++v) {
            auto [d, s] = fixture::random_semi_grundy_factor(rng, 3);
            factors.push_back(d);
            funcs.push_back(s);
        }
        auto fa = cartesian_product(base, factors);
        auto result = product_semi_grundy_kp(fa, funcs);
        REQUIRE(is_semi_grundy(fa.product(), result.values));
        REQUIRE(product_bound_check(funcs, base.order(), result.values));

        VertexSet seen(fa.product().order());
        for (const auto &stage : result.trace.stages) {
            REQUIRE_FALSE(stage.layer.empty());
            REQUIRE_FALSE(stage.layer.intersects(seen));
            seen |= stage.layer;
        }
        REQUIRE(seen == fa.product().vertices());
    }
}

TEST_CASE("extract_factors examples")
{
    auto pair = cartesian_product(arc_ab(), {k1, k1});
    auto got = extract_factors(pair, {1, 0});
    CHECK(got.semi_kernel == set(2, {1}));
    CHECK(got.functions == std::vector<ValueMap>{{0}, {0}});

    auto chain = make_digraph(3, {{2, 1}, {1, 0}});
    auto single = extract_factors(cartesian_product(k1, {chain}), {2, 4, 7});
    CHECK(single.semi_kernel == set(1, {0}));
    CHECK(single.functions == std::vector<ValueMap>{{0, 1, 2}});

    CHECK_THROWS_AS(extract_factors(pair, {0, 1}), ContractError);

    auto fig = fixture::figure7();
    auto s = product_semi_grundy_kp(fig.family, fig.functions).values;
    auto back = extract_factors(fig.family, s);
    CHECK(is_semi_kernel(fig.family.base(), back.semi_kernel));
    for (Vertex u = 0; u < 4; ++u) {
        CHECK(is_semi_grundy(fig.family.factor(u), back.functions[u]));
        CHECK(fixture::partition(back.functions[u]) == fixture::partition(fig.functions[u]));
    }
}

TEST_CASE("extract_factors property on random product semi-Grundy functions")
{
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 150; ++trial) {
        auto base = oracle::random_digraph(rng, 1 + rng() % 3, 0.4);
        std::vector<Digraph> factors;
        for (Vertex v = 0; v < base.order(); ++v)
            factors.push_back(oracle::random_digraph(rng, 1 + rng() % 3, 0.4));
        auto fa = cartesian_product(base, factors);
        auto s = find_semi_grundy(fa.product());
        if (! s.found)
            continue;
        auto got = extract_factors(fa, *s.witness);
        REQUIRE(is_semi_kernel(base, got.semi_kernel));
        for (Vertex u = 0; u < base.order(); ++u) {
            REQUIRE(is_semi_grundy(factors[u], got.functions[u]));
            REQUIRE(fixture::partition(got.functions[u])
                    == fixture::partition(fixture::restrict_to(fa, *s.witness, u)));
        }
    }
}

TEST_CASE("stratified_product_semi_grundy examples")
{
    std::vector<ValueMap> zeros{{0}, {0}};
    auto pair = cartesian_product(arc_ab(), {k1, k1});
    auto s = stratified_product_semi_grundy(pair, {1, 0}, zeros);
    CHECK(s == ValueMap{1, 0});

    auto chain = make_digraph(3, {{2, 1}, {1, 0}});
    std::vector<ValueMap> one{{0, 1, 2}};
    CHECK(stratified_product_semi_grundy(cartesian_product(k1, {chain}), {0}, one) == one[0]);

    auto arcs = cartesian_product(arc_ab(), {arc01, arc01});
    std::vector<ValueMap> down{{1, 0}, {1, 0}};
    auto t = stratified_product_semi_grundy(arcs, {1, 0}, down);
    CHECK(t == ValueMap{3, 2, 1, 0});
    CHECK(is_semi_grundy(arcs.product(), t));
    CHECK(t.max_value() == 3);
}

TEST_CASE("stratified_product_semi_grundy input errors")
{
    auto arcs = cartesian_product(arc_ab(), {arc01, k1});
    std::vector<ValueMap> funcs{{1, 0}, {0}};
    // Level 0 holds only b and level 1 only a, so maxima may differ across levels.
    CHECK(stratified_product_semi_grundy(arcs, {1, 0}, funcs).max_value() == 1 + 0 + 1);

    auto flat = cartesian_product(make_digraph(2, {}), {arc01, k1});
    try {
        stratified_product_semi_grundy(flat, {0, 0}, funcs);
        FAIL("expected an input error");
    }
    catch (const InputError &e) {
        CHECK(std::string(e.what()).find("level 0") != std::string::npos);
    }

    CHECK_THROWS_AS(stratified_product_semi_grundy(arcs, {0, 1}, funcs), InputError);
    CHECK_THROWS_AS(stratified_product_semi_grundy(arcs, {2, 0}, funcs), InputError);
    std::vector<ValueMap> gapped{{2, 0}, {0}};
    CHECK_THROWS_AS(stratified_product_semi_grundy(arcs, {1, 0}, gapped), InputError);
    std::vector<ValueMap> invalid{{0, 1}, {0}};
    CHECK_THROWS_AS(stratified_product_semi_grundy(arcs, {1, 0}, invalid), InputError);
}

TEST_CASE("stratified_product_semi_grundy property with equal maxima per level")
{
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 60; ++trial) {
        auto base = fixture::random_semi_grundy_factor(rng, 4);
        const auto &f = base.second;
        std::vector<Value> level_max(f.max_value() + 1);
        for (auto &m : level_max)
            m = static_cast<Value>(rng() % 3);
        std::vector<Digraph> factors;
        std::vector<ValueMap> funcs;
        for (Vertex u = 0; u < base.first.order(); ++u) {
            auto [d, s] = fixture::random_factor_with_max(rng, 4, level_max[f[u]]);
            factors.push_back(d);
            funcs.push_back(s);
        }
        auto fa = cartesian_product(base.first, factors);
        auto s = stratified_product_semi_grundy(fa, f, funcs);
        REQUIRE(is_semi_grundy(fa.product(), s));
        Value expected = f.max_value();
        for (auto m : level_max)
            expected += m;
        REQUIRE(s.max_value() == expected);
    }
}
