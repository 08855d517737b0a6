#include <doctest.h>

#include "oracles.hpp"

#include <twlab/json_io.hpp>
#include <twlab/problems.hpp>
#include <twlab/reductions.hpp>

using namespace twlab;

namespace {
auto unit(const Graph &g) -> EdgeWeighting
{
    return EdgeWeighting::uniform(g, 1);
}

auto constant(const Graph &g, Weight r) -> std::vector<Weight>
{
    return std::vector<Weight>(static_cast<std::size_t>(g.vertex_count()), r);
}

/// First admissible orientation in lexicographic order (edge 0 decided
/// first, canonical direction before its reverse), by enumeration.
auto lex_first_admissible(const ChosenOutdegreeInstance &inst) -> std::optional<Orientation>
{
    auto &g = inst.graph;
    auto m = g.edge_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<bool> forward;
        for (int e = 0; e < m; ++e)
            forward.push_back(((mask >> (m - 1 - e)) & 1) == 0);
        auto lam = Orientation::from_forward_flags(g, forward);
        std::vector<Weight> out(static_cast<std::size_t>(g.vertex_count()), 0);
        for (int e = 0; e < m; ++e)
            out[lam.tail(e)] += inst.weights.weight(e);
        bool ok = true;
        for (std::size_t v = 0; v < out.size(); ++v)
            ok = ok && out[v] <= inst.rho[v];
        if (ok)
            return lam;
    }
    return std::nullopt;
}
}

TEST_CASE("list coloring oracle")
{
    ListColoringInstance one{Graph(1), {{1}}};
    auto c = bf_list_coloring(one);
    REQUIRE(c);
    CHECK(*c == Coloring{1});

    CHECK_FALSE(bf_list_coloring({complete_graph(3), {{1, 2}, {1, 2}, {1, 2}}}));

    ListColoringInstance path{path_graph(3), {{1}, {1, 2}, {1}}};
    auto pc = bf_list_coloring(path);
    REQUIRE(pc);
    CHECK(*pc == Coloring{1, 2, 1});

    CHECK_FALSE(bf_list_coloring({Graph(2), {{1}, {}}}));
    CHECK(bf_list_coloring({Graph(0), {}}));
    CHECK_THROWS_AS(bf_list_coloring({Graph(2), {{1}}}), InputError);
    CHECK_THROWS_AS(bf_list_coloring({Graph(1), {{0}}}), InputError);

    CHECK_FALSE(is_list_coloring(path, {1, 1, 1}));
    CHECK_FALSE(is_list_coloring(path, {2, 1, 2}));
    CHECK_FALSE(is_list_coloring(path, {1, 2}));
}

TEST_CASE("list coloring oracle agrees with exhaustive search")
{
    std::mt19937_64 rng(61);
    for (int round = 0; round < 200; ++round) {
        auto n = 1 + static_cast<int>(rng() % 8);
        ListColoringInstance inst{oracle::random_graph(rng, n, 0.45), oracle::random_lists(rng, n, 1 + static_cast<int>(rng() % 4))};
        auto c = bf_list_coloring(inst);
        CHECK(c.has_value() == oracle::list_colorable(inst));
        if (c)
            CHECK(is_list_coloring(inst, *c));
    }
}

TEST_CASE("precoloring extension oracle")
{
    Graph k2(2, {{0, 1}});
    auto c = bf_precoloring({k2, {1, 2}, 2});
    REQUIRE(c);
    CHECK(*c == Coloring{1, 2});

    CHECK_FALSE(bf_precoloring({complete_graph(3), {1, 2, 0}, 2}));

    PrecoloringExtensionInstance c4{cycle_graph(4), {1, 0, 0, 0}, 2};
    auto ext = bf_precoloring(c4);
    REQUIRE(ext);
    CHECK(*ext == Coloring{1, 2, 1, 2});
    CHECK(is_precoloring_extension(c4, *ext));
    CHECK_FALSE(is_precoloring_extension(c4, {2, 1, 2, 1}));

    CHECK_THROWS_AS(bf_precoloring({k2, {1, 1}, 2}), InputError);
    CHECK_THROWS_AS(bf_precoloring({k2, {3, 0}, 2}), InputError);

    std::mt19937_64 rng(67);
    for (int round = 0; round < 150; ++round) {
        auto n = 1 + static_cast<int>(rng() % 7);
        auto g = oracle::random_graph(rng, n, 0.4);
        int r = 1 + static_cast<int>(rng() % 3);
        std::vector<int> pre(static_cast<std::size_t>(n), 0);
        for (Vertex v = 0; v < n; ++v) {
            if (rng() % 3)
                continue;
            int color = 1 + static_cast<int>(rng() % r);
            bool clash = false;
            for (auto u : g.neighbors(v))
                clash = clash || pre[u] == color;
            if (! clash)
                pre[v] = color;
        }
        PrecoloringExtensionInstance inst{g, pre, r};
        auto got = bf_precoloring(inst);
        CHECK(got.has_value() == oracle::precoloring_extendable(inst));
        if (got)
            CHECK(is_precoloring_extension(inst, *got));
    }
}

TEST_CASE("equitable coloring oracle")
{
    CHECK(bf_equitable({Graph(2, {{0, 1}}), 2}));
    CHECK_FALSE(bf_equitable({star_graph(3), 2}));
    auto c = bf_equitable({star_graph(3), 4});
    REQUIRE(c);
    CHECK(is_equitable_coloring({star_graph(3), 4}, *c));

    // every one of the r classes counts, empty ones included: K_{3,3} splits
    // 3 + 3 with two colors, but three colors force sizes 3, 2, 1 or 3, 3, 0
    std::vector<Edge> kk;
    for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = 3; v < 6; ++v)
            kk.push_back({u, v});
    Graph k33(6, kk);
    CHECK(bf_equitable({k33, 2}));
    CHECK_FALSE(bf_equitable({k33, 3}));
    CHECK(bf_equitable({Graph(1), 3}));
    CHECK(bf_equitable({Graph(3), 3}));
    CHECK_FALSE(is_equitable_coloring({Graph(3), 3}, {1, 1, 2}));
    CHECK(is_equitable_coloring({Graph(3), 2}, {1, 1, 2}));
}

TEST_CASE("general factor oracle")
{
    auto tri = complete_graph(3);
    CHECK_FALSE(bf_general_factor({tri, {{1}, {1}, {1}}}));

    auto c4 = cycle_graph(4);
    GeneralFactorInstance matching{c4, {{1}, {1}, {1}, {1}}};
    auto f = bf_general_factor(matching);
    REQUIRE(f);
    CHECK(f->size() == 2);
    CHECK(is_general_factor(matching, *f));

    GeneralFactorInstance even{c4, {{0, 2}, {0, 2}, {0, 2}, {0, 2}}};
    auto empty = bf_general_factor(even);
    REQUIRE(empty);
    CHECK(empty->empty());

    CHECK_THROWS_AS(bf_general_factor({tri, {{3}, {1}, {1}}}), InputError);
}

TEST_CASE("generalized satisfiability oracle")
{
    GensatInstance none;
    none.variable_count = 2;
    CHECK(bf_gensat(none));

    GensatInstance empty_rel;
    empty_rel.variable_count = 2;
    empty_rel.relations.push_back({2, {}});
    empty_rel.constraints.push_back({{0, 1}, 0});
    CHECK_FALSE(bf_gensat(empty_rel));

    auto k3 = clique_to_gensat(complete_graph(3), 3);
    auto tau = bf_gensat(k3.instance);
    REQUIRE(tau);
    CHECK(satisfies(k3.instance, *tau));

    GensatInstance bad;
    bad.variable_count = 2;
    bad.relations.push_back({2, {{0, 1}}});
    bad.constraints.push_back({{0, 0}, 0});
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad.constraints = {{{0}, 0}};
    CHECK_THROWS_AS(bad.validate(), InputError);

    std::mt19937_64 rng(71);
    for (int round = 0; round < 100; ++round) {
        GensatInstance inst;
        inst.variable_count = 1 + static_cast<int>(rng() % 7);
        for (int r = 0; r < 2; ++r) {
            int arity = 1 + static_cast<int>(rng() % 3);
            BooleanRelation rel{arity, {}};
            for (std::uint32_t t = 0; t < (1u << arity); ++t)
                if (rng() % 2) {
                    std::vector<std::uint8_t> tuple;
                    for (int b = 0; b < arity; ++b)
                        tuple.push_back(static_cast<std::uint8_t>(t >> b & 1));
                    rel.tuples.push_back(tuple);
                }
            inst.relations.push_back(rel);
        }
        int count = static_cast<int>(rng() % 5);
        for (int c = 0; c < count; ++c) {
            int rel = static_cast<int>(rng() % 2);
            std::vector<int> vars(static_cast<std::size_t>(inst.variable_count));
            std::iota(vars.begin(), vars.end(), 0);
            std::shuffle(vars.begin(), vars.end(), rng);
            if (inst.relations[rel].arity > inst.variable_count)
                continue;
            vars.resize(static_cast<std::size_t>(inst.relations[rel].arity));
            inst.constraints.push_back({vars, rel});
        }
        auto got = bf_gensat(inst);
        CHECK(got.has_value() == oracle::gensat_satisfiable(inst));
        if (got)
            CHECK(satisfies(inst, *got));
    }
}

TEST_CASE("chosen outdegree oracle")
{
    Graph k2(2, {{0, 1}});
    CHECK_FALSE(bf_chosen_outdegree({k2, unit(k2), {0, 0}}));
    auto lam = bf_chosen_outdegree({k2, unit(k2), {1, 0}});
    REQUIRE(lam);
    CHECK(lam->tail(0) == 0);
    auto rev = bf_chosen_outdegree({k2, unit(k2), {0, 1}});
    REQUIRE(rev);
    CHECK(rev->tail(0) == 1);

    CHECK_THROWS_AS(bf_chosen_outdegree({k2, unit(k2), {-1, 1}}), InputError);
    CHECK_THROWS_AS(bf_chosen_outdegree({k2, unit(k2), {1}}), InputError);
}

TEST_CASE("chosen outdegree search agrees with unpruned enumeration")
{
    std::mt19937_64 rng(73);
    int yes = 0;
    for (int round = 0; round < 300; ++round) {
        auto n = 1 + static_cast<int>(rng() % 7);
        auto g = oracle::random_graph(rng, n, 0.5);
        if (g.edge_count() > 16)
            continue;
        auto w = oracle::random_weights(rng, g, 4);
        std::vector<Weight> rho;
        for (int v = 0; v < n; ++v)
            rho.push_back(static_cast<Weight>(rng() % 7));
        ChosenOutdegreeInstance inst{g, w, rho};
        auto got = bf_chosen_outdegree(inst);
        CHECK(got.has_value() == oracle::any_orientation_within(g, w, rho));
        // and it is the lexicographically first admissible orientation
        CHECK(got == lex_first_admissible(inst));
        if (got) {
            ++yes;
            CHECK(is_admissible(g, w, rho, *got));
        }
    }
    CHECK(yes > 30);
}

TEST_CASE("chosen outdegree feasibility is monotone in rho")
{
    std::mt19937_64 rng(79);
    for (int round = 0; round < 100; ++round) {
        auto n = 2 + static_cast<int>(rng() % 5);
        auto g = oracle::random_graph(rng, n, 0.6);
        auto w = oracle::random_weights(rng, g, 3);
        std::vector<Weight> rho, more;
        for (int v = 0; v < n; ++v) {
            rho.push_back(static_cast<Weight>(rng() % 5));
            more.push_back(rho.back() + static_cast<Weight>(rng() % 3));
        }
        if (bf_chosen_outdegree({g, w, rho}))
            CHECK(bf_chosen_outdegree({g, w, more}));
    }
}

TEST_CASE("minimum maximum outdegree oracle")
{
    auto tri = complete_graph(3);
    CHECK(bf_min_max_value(tri, unit(tri)) == 1);

    auto p3 = path_graph(3);
    CHECK(bf_min_max_value(p3, EdgeWeighting(p3, {3, 1})) == 3);

    auto k4 = complete_graph(4);
    CHECK(bf_min_max_value(k4, unit(k4)) == 2);
    CHECK(oracle::min_max_by_enumeration(k4, unit(k4)) == 2);

    CHECK(bf_min_max_value(Graph(3), EdgeWeighting(Graph(3), {})) == 0);

    CHECK(bf_min_max_outdegree({tri, unit(tri), 1}));
    CHECK_FALSE(bf_min_max_outdegree({tri, unit(tri), 0}));
    CHECK(bf_min_max_outdegree({Graph(2), EdgeWeighting(Graph(2), {}), 0}));
    CHECK_THROWS_AS(MinMaxOutdegreeInstance({tri, unit(tri), 0}).validate(), InputError);
    CHECK_THROWS_AS(bf_min_max_outdegree({tri, unit(tri), -1}), InputError);
    CHECK_THROWS_AS(MinMaxOutdegreeInstance({tri, EdgeWeighting(tri, {600000, 600000, 1}), 1}).validate(), InputError);
    CHECK_NOTHROW(MinMaxOutdegreeInstance({tri, EdgeWeighting(tri, {600000, 600000, 1}), 1}).validate(2'000'000));
}

TEST_CASE("min-max value is consistent with the decision and scale free")
{
    std::mt19937_64 rng(83);
    for (int round = 0; round < 100; ++round) {
        auto n = 1 + static_cast<int>(rng() % 6);
        auto g = oracle::random_graph(rng, n, 0.5);
        auto w = oracle::random_weights(rng, g, 4);
        auto value = bf_min_max_value(g, w);
        CHECK(value == oracle::min_max_by_enumeration(g, w));
        for (Weight r = 0; r <= w.total_weight() + 1; ++r)
            CHECK(bf_min_max_outdegree({g, w, r}).has_value() == (r >= value));

        Weight c = 2 + static_cast<Weight>(rng() % 3);
        std::vector<Weight> scaled;
        for (auto x : w.weights())
            scaled.push_back(c * x);
        EdgeWeighting ws(g, scaled);
        for (Weight r = 1; r <= 8; ++r)
            CHECK(bf_min_max_outdegree({g, w, r}).has_value() == bf_min_max_outdegree({g, ws, c * r}).has_value());
    }
}

TEST_CASE("partitioned clique oracle")
{
    PartitionedGraph one(Graph(2, {{0, 1}}), {{0}, {1}});
    auto c = bf_partitioned_clique(one);
    REQUIRE(c);
    CHECK(*c == VertexSet{0, 1});

    // complete 3-partite graph on parts of size 2
    std::vector<Edge> edges;
    for (Vertex u = 0; u < 6; ++u)
        for (Vertex v = u + 1; v < 6; ++v)
            if (u / 2 != v / 2)
                edges.push_back({u, v});
    PartitionedGraph full(Graph(6, edges), {{0, 1}, {2, 3}, {4, 5}});
    CHECK(bf_partitioned_clique(full) == VertexSet{0, 2, 4});

    PartitionedGraph lonely(Graph(6, {{0, 2}, {1, 3}}), {{0, 1}, {2, 3}, {4, 5}});
    CHECK_FALSE(bf_partitioned_clique(lonely));

    std::mt19937_64 rng(89);
    for (int round = 0; round < 100; ++round) {
        int k = 2 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
        std::vector<VertexSet> parts(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j)
                parts[i].push_back(i * n + j);
        std::vector<Edge> es;
        for (Vertex u = 0; u < k * n; ++u)
            for (Vertex v = u + 1; v < k * n; ++v)
                if (u / n != v / n && rng() % 2)
                    es.push_back({u, v});
        PartitionedGraph pg(Graph(k * n, es), parts);
        auto got = bf_partitioned_clique(pg);
        CHECK(got.has_value() == oracle::has_transversal_clique(pg));
        if (got)
            CHECK(is_clique(pg.graph(), *got));
    }
}

TEST_CASE("plain clique oracle")
{
    std::mt19937_64 rng(97);
    for (int round = 0; round < 100; ++round) {
        auto g = oracle::random_graph(rng, 1 + static_cast<int>(rng() % 8), 0.5);
        int k = 1 + static_cast<int>(rng() % 4);
        auto got = bf_clique(g, k);
        CHECK(got.has_value() == oracle::has_clique(g, k));
        if (got) {
            CHECK(static_cast<int>(got->size()) == k);
            CHECK(is_clique(g, *got));
        }
    }
}

TEST_CASE("primal, dual and incidence graphs")
{
    GensatInstance one;
    one.variable_count = 2;
    one.relations.push_back({2, {{1, 0}}});
    one.constraints.push_back({{0, 1}, 0});
    CHECK(build_primal(one) == Graph(2, {{0, 1}}));
    CHECK(build_dual(one) == Graph(1));
    CHECK(build_incidence(one) == Graph(3, {{0, 2}, {1, 2}}));

    GensatInstance disjoint;
    disjoint.variable_count = 4;
    disjoint.relations.push_back({2, {{1, 1}}});
    disjoint.constraints = {{{0, 1}, 0}, {{2, 3}, 0}};
    CHECK(build_dual(disjoint).edge_count() == 0);

    auto k3 = clique_to_gensat(complete_graph(3), 3);
    CHECK(build_dual(k3.instance) == complete_graph(3));

    std::mt19937_64 rng(101);
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_graph(rng, 1 + static_cast<int>(rng() % 5), 0.5);
        auto out = clique_to_gensat(g, 2 + static_cast<int>(rng() % 3));
        auto inc = build_incidence(out.instance);
        VertexSet constraints;
        for (std::size_t j = 0; j < out.instance.constraints.size(); ++j)
            constraints.push_back(out.instance.variable_count + static_cast<int>(j));
        CHECK(remove_vertices(inc, constraints).graph.edge_count() == 0);
    }
}

TEST_CASE("instance json round trips")
{
    std::mt19937_64 rng(103);
    auto g = oracle::random_graph(rng, 6, 0.5);
    auto w = oracle::random_weights(rng, g, 4);
    std::vector<AnyInstance> all{
        ListColoringInstance{g, oracle::random_lists(rng, 6, 3)},
        PrecoloringExtensionInstance{path_graph(3), {1, 0, 2}, 2},
        EquitableColoringInstance{g, 3},
        GeneralFactorInstance{cycle_graph(4), {{1}, {0, 2}, {1}, {2}}},
        clique_to_gensat(complete_graph(3), 3).instance,
        ChosenOutdegreeInstance{g, w, constant(g, 3)},
        MinMaxOutdegreeInstance{g, w, 4},
    };
    for (auto &inst : all) {
        auto j = to_json(inst);
        CHECK(j.at("type") == instance_type(inst));
        CHECK(instance_from_json(j) == inst);
        CHECK(instance_from_json(Json::parse(j.dump())) == inst);
    }
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"type": "sudoku"})")), InputError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"type": "chosen_outdegree", "graph": {"n": 2, "edges": [[0, 1]]}, "rho": [1, 1]})")), InputError);
    CHECK_THROWS_AS(instance_from_json(Json::parse(R"({"type": "precoloring", "graph": {"n": 2, "edges": [[0, 1]]}, "precolor": [[0, 1], [1, 1]], "r": 2})")), InputError);
}
