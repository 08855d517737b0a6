#include <doctest.h>

#include "oracles.hpp"

#include <twlab/graph.hpp>
#include <twlab/json_io.hpp>

using namespace twlab;

TEST_CASE("graph construction canonicalizes and rejects malformed edges")
{
    Graph g(3, {{2, 0}, {0, 1}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}});
    CHECK(g.has_edge(2, 0));
    CHECK(g.degree(0) == 2);
    CHECK(g.max_degree() == 2);

    CHECK_THROWS_AS(Graph(2, {{1, 1}}), InputError);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), InputError);
    CHECK_THROWS_AS(Graph(-1), InputError);
}

TEST_CASE("adjacency agrees with the edge set")
{
    std::mt19937_64 rng(11);
    for (int round = 0; round < 40; ++round) {
        auto g = oracle::random_graph(rng, 9, 0.4);
        int incidences = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            auto &nb = g.neighbors(v);
            auto &inc = g.incident_edges(v);
            REQUIRE(nb.size() == inc.size());
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            for (std::size_t i = 0; i < nb.size(); ++i) {
                CHECK(g.edge(inc[i]) == make_edge(v, nb[i]));
                CHECK(g.edge_index(v, nb[i]) == inc[i]);
            }
            incidences += static_cast<int>(nb.size());
        }
        CHECK(incidences == 2 * g.edge_count());
        for (Vertex u = 0; u < 9; ++u)
            for (Vertex v = 0; v < 9; ++v)
                CHECK(g.has_edge(u, v) == std::binary_search(g.edges().begin(), g.edges().end(), make_edge(u, v)));
    }
}

TEST_CASE("induced_subgraph")
{
    auto tri = complete_graph(3);
    CHECK(induced_subgraph(tri, {0, 1, 2}).graph == tri);
    CHECK(induced_subgraph(tri, {0, 1}).graph == Graph(2, {{0, 1}}));

    auto sub = induced_subgraph(path_graph(4), {0, 2, 3});
    CHECK(sub.graph.vertex_count() == 3);
    CHECK(sub.graph.edges() == std::vector<Edge>{{1, 2}});
    CHECK(sub.new_to_old == std::vector<Vertex>{0, 2, 3});
    CHECK(sub.old_to_new == std::vector<int>{0, -1, 1, 2});

    CHECK_THROWS_AS(induced_subgraph(tri, {3}), InputError);
}

TEST_CASE("remove_vertices")
{
    CHECK(remove_vertices(complete_graph(4), {0}).graph == complete_graph(3));
    auto p = petersen_graph();
    CHECK(remove_vertices(p, {}).graph == p);
    auto star = remove_vertices(star_graph(3), {0}).graph;
    CHECK(star.vertex_count() == 3);
    CHECK(star.edge_count() == 0);

    std::mt19937_64 rng(5);
    for (int round = 0; round < 30; ++round) {
        auto g = oracle::random_graph(rng, 8, 0.5);
        VertexSet x;
        for (Vertex v = 0; v < 8; ++v)
            if (rng() % 3 == 0)
                x.push_back(v);
        auto rest = remove_vertices(g, x);
        CHECK(rest.graph.vertex_count() == 8 - static_cast<int>(x.size()));
        int kept = 0;
        for (auto &e : g.edges())
            if (std::find(x.begin(), x.end(), e.u) == x.end() && std::find(x.begin(), x.end(), e.v) == x.end())
                ++kept;
        CHECK(rest.graph.edge_count() == kept);
    }
}

TEST_CASE("is_clique")
{
    CHECK(is_clique(petersen_graph(), {}));
    CHECK(is_clique(complete_graph(4), {0, 1, 2, 3}));
    CHECK_FALSE(is_clique(cycle_graph(4), {0, 1, 2, 3}));
    CHECK_THROWS_AS(is_clique(cycle_graph(4), {7}), InputError);

    // monotone under taking subsets
    std::mt19937_64 rng(3);
    for (int round = 0; round < 50; ++round) {
        auto g = oracle::random_graph(rng, 7, 0.7);
        for (std::uint32_t mask = 0; mask < 128; ++mask) {
            VertexSet s;
            for (int v = 0; v < 7; ++v)
                if (mask >> v & 1)
                    s.push_back(v);
            if (! is_clique(g, s))
                continue;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                auto t = s;
                t.erase(t.begin() + static_cast<long>(drop));
                CHECK(is_clique(g, t));
            }
        }
    }
}

TEST_CASE("edge weighting")
{
    auto tri = complete_graph(3);
    EdgeWeighting w(tri, {1, 2, 3});
    CHECK(w.total_weight() == 6);
    CHECK_FALSE(w.is_uniform());
    CHECK(EdgeWeighting::uniform(tri, 4).is_uniform());
    CHECK_THROWS_AS(EdgeWeighting(tri, {1, 0, 3}), InputError);
    CHECK_THROWS_AS(EdgeWeighting(tri, {1, 2}), InputError);
}

TEST_CASE("weighted_outdegree")
{
    Graph single(1);
    CHECK(weighted_outdegree(single, EdgeWeighting(single, {}), Orientation(single, {}), 0) == 0);

    Graph k2(2, {{0, 1}});
    EdgeWeighting w5(k2, {5});
    Orientation forward(k2, {{0, 1}});
    CHECK(weighted_outdegree(k2, w5, forward, 0) == 5);
    CHECK(weighted_outdegree(k2, w5, forward, 1) == 0);

    // triangle as a directed cycle: edges (0,1) (0,2) (1,2) weighted 1 2 3
    auto tri = complete_graph(3);
    EdgeWeighting w(tri, {1, 2, 3});
    Orientation cyc(tri, {{0, 1}, {2, 0}, {1, 2}});
    CHECK(weighted_outdegree(tri, w, cyc, 0) == 1);
    CHECK(weighted_outdegree(tri, w, cyc, 1) == 3);
    CHECK(weighted_outdegree(tri, w, cyc, 2) == 2);

    CHECK_THROWS_AS(Orientation(k2, {{0, 0}}), InputError);
}

TEST_CASE("outdegrees always sum to the total weight")
{
    std::mt19937_64 rng(17);
    for (int round = 0; round < 60; ++round) {
        auto g = oracle::random_graph(rng, 7, 0.5);
        auto w = oracle::random_weights(rng, g, 9);
        std::vector<bool> forward;
        for (int e = 0; e < g.edge_count(); ++e)
            forward.push_back(rng() & 1);
        auto lam = Orientation::from_forward_flags(g, forward);
        Weight sum = 0;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            sum += weighted_outdegree(g, w, lam, v);
        CHECK(sum == w.total_weight());
    }
}

TEST_CASE("partitioned graph invariants")
{
    Graph g(4, {{0, 2}, {1, 3}});
    PartitionedGraph pg(g, {{0, 1}, {2, 3}});
    CHECK(pg.part_count() == 2);
    CHECK(pg.part_size() == 2);
    CHECK(pg.part_of(3) == 1);

    CHECK_THROWS_AS(PartitionedGraph(Graph(4, {{0, 1}}), {{0, 1}, {2, 3}}), InputError);
    CHECK_THROWS_AS(PartitionedGraph(g, {{0, 1, 2}, {3}}), InputError);
    CHECK_THROWS_AS(PartitionedGraph(g, {{0, 1}, {1, 3}}), InputError);
    CHECK_THROWS_AS(PartitionedGraph(g, {{0, 1}}), InputError);
}

TEST_CASE("json round trips for graph-level types")
{
    std::mt19937_64 rng(23);
    for (int round = 0; round < 20; ++round) {
        auto g = oracle::random_graph(rng, 8, 0.4);
        auto w = oracle::random_weights(rng, g, 5);
        auto doc = graph_from_json(to_json(g, &w));
        CHECK(doc.graph == g);
        REQUIRE(doc.weights);
        CHECK(*doc.weights == w);

        std::vector<bool> forward;
        for (int e = 0; e < g.edge_count(); ++e)
            forward.push_back(rng() & 1);
        auto lam = Orientation::from_forward_flags(g, forward);
        CHECK(orientation_from_json(to_json(lam), g) == lam);
    }
    PartitionedGraph pg(Graph(4, {{0, 2}, {1, 3}}), {{0, 1}, {2, 3}});
    CHECK(partitioned_from_json(to_json(pg)) == pg);

    // edges given in either order are canonicalized, weights follow them
    auto doc = graph_from_json(Json::parse(R"({"n": 3, "edges": [[2, 1], [1, 0]], "weights": [7, 4]})"));
    CHECK(doc.graph.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(doc.weights->weights() == std::vector<Weight>{4, 7});

    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edges": [[0, 0]]})")), InputError);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2})")), InputError);
    CHECK_THROWS_AS(graph_from_json(Json::parse(R"({"n": 2, "edges": [[0, 1]], "weights": [1, 2]})")), InputError);
}
