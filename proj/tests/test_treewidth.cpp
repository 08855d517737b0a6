#include <doctest.h>

#include "oracles.hpp"

#include <twlab/json_io.hpp>
#include <twlab/treewidth.hpp>

using namespace twlab;

namespace {
auto single_bag(VertexSet bag) -> TreeDecomposition
{
    return {Graph(1), {std::move(bag)}};
}

auto has_violation(const ValidationResult &r, ViolationKind kind) -> bool
{
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation &v) { return v.kind == kind; });
}
}

TEST_CASE("validate")
{
    auto k3 = complete_graph(3);
    CHECK(validate(single_bag({0, 1, 2}), k3).ok());
    CHECK(width(single_bag({0, 1, 2})) == 2);

    auto p3 = path_graph(3);
    TreeDecomposition two{Graph(2, {{0, 1}}), {{0, 1}, {1, 2}}};
    CHECK(validate(two, p3).ok());
    CHECK(width(two) == 1);

    TreeDecomposition missing{Graph(2, {{0, 1}}), {{0, 1}, {2}}};
    auto r = validate(missing, p3);
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].kind == ViolationKind::UncoveredEdge);
    CHECK(r.violations[0].edge == Edge{1, 2});

    // vertex 0 occurs at both ends of a path of bags but not in the middle
    TreeDecomposition split{Graph(3, {{0, 1}, {1, 2}}), {{0, 1}, {1, 2}, {0, 2}}};
    CHECK(has_violation(validate(split, Graph(3, {{0, 1}, {1, 2}})), ViolationKind::DisconnectedOccurrence));

    TreeDecomposition forest{Graph(2), {{0, 1}, {1, 2}}};
    auto nt = validate(forest, p3);
    REQUIRE_FALSE(nt.ok());
    CHECK(nt.violations[0].kind == ViolationKind::NotATree);

    CHECK(has_violation(validate(single_bag({0, 1}), p3), ViolationKind::UncoveredVertex));
    CHECK(has_violation(validate(single_bag({0, 1, 2, 5}), p3), ViolationKind::VertexOutOfRange));
    CHECK_FALSE(validate(missing, p3).summary().empty());
}

TEST_CASE("width")
{
    CHECK(width(single_bag({})) == -1);
    CHECK(width(TreeDecomposition{Graph(2, {{0, 1}}), {{0, 1}, {1, 2}}}) == 1);
    CHECK(width(single_bag({0, 1, 2, 3, 4, 5, 6, 7})) == 7);
}

TEST_CASE("from_elimination_order")
{
    auto p3 = path_graph(3);
    auto td = from_elimination_order(p3, {0, 2, 1});
    CHECK(validate(td, p3).ok());
    CHECK(width(td) == 1);

    auto k4 = complete_graph(4);
    CHECK(width(from_elimination_order(k4, {2, 0, 3, 1})) == 3);

    auto c4 = cycle_graph(4);
    auto c4td = from_elimination_order(c4, {0, 1, 2, 3});
    CHECK(validate(c4td, c4).ok());
    CHECK(width(c4td) == 2);

    CHECK_THROWS_AS(from_elimination_order(p3, {0, 1}), InputError);
    CHECK_THROWS_AS(from_elimination_order(p3, {0, 1, 1}), InputError);

    auto empty = from_elimination_order(Graph(0), {});
    CHECK(validate(empty, Graph(0)).ok());
    CHECK(width(empty) == -1);
}

TEST_CASE("heuristic decompositions")
{
    std::mt19937_64 rng(29);
    for (int round = 0; round < 20; ++round) {
        auto tree = oracle::random_tree(rng, 2 + round % 10);
        for (auto m : {HeuristicMethod::MinFill, HeuristicMethod::MinDegree})
            CHECK(width(heuristic_decomposition(tree, m)) == 1);
    }
    CHECK(width(heuristic_decomposition(complete_graph(5), HeuristicMethod::MinFill)) == 4);
    CHECK(width(heuristic_decomposition(complete_graph(5), HeuristicMethod::MinDegree)) == 4);
    CHECK(width(heuristic_decomposition(cycle_graph(4), HeuristicMethod::MinFill)) == 2);

    for (int round = 0; round < 60; ++round) {
        auto g = oracle::random_graph(rng, 1 + round % 12, 0.35);
        for (auto m : {HeuristicMethod::MinFill, HeuristicMethod::MinDegree}) {
            auto td = heuristic_decomposition(g, m);
            CHECK(oracle::decomposition_ok(td, g));
            CHECK(validate(td, g).ok());
            // same inputs, same output
            CHECK(heuristic_decomposition(g, m) == td);
            CHECK(heuristic_decomposition(g, m, 99, 4) == heuristic_decomposition(g, m, 99, 4));
            // restarts only ever keep a narrower result
            CHECK(width(heuristic_decomposition(g, m, 7, 5)) <= width(td));
        }
    }
}

TEST_CASE("heuristic order ties go to the lowest index")
{
    // every vertex of an edgeless graph ties, so the order is the identity
    CHECK(heuristic_order(Graph(5), HeuristicMethod::MinDegree) == EliminationOrder{0, 1, 2, 3, 4});
    CHECK(heuristic_order(Graph(5), HeuristicMethod::MinFill) == EliminationOrder{0, 1, 2, 3, 4});
    // path 0-1-2: the two leaves tie at degree 1, vertex 0 goes first
    CHECK(heuristic_order(path_graph(3), HeuristicMethod::MinDegree).front() == 0);
}

TEST_CASE("exact treewidth")
{
    CHECK(exact_treewidth(path_graph(4)).treewidth == 1);
    CHECK(exact_treewidth(cycle_graph(4)).treewidth == 2);
    CHECK(oracle::treewidth_by_permutations(cycle_graph(4)) == 2);
    auto pet = exact_treewidth(petersen_graph());
    CHECK(pet.treewidth == 4);
    CHECK(validate(pet.decomposition, petersen_graph()).ok());
    CHECK(width(pet.decomposition) == 4);

    CHECK(exact_treewidth(Graph(0)).treewidth == -1);
    CHECK(exact_treewidth(Graph(3)).treewidth == 0);

    CHECK_THROWS_AS(exact_treewidth(cycle_graph(19)), InputError);
    CHECK_THROWS_AS(exact_treewidth(cycle_graph(10), 9), InputError);
    CHECK(exact_treewidth(cycle_graph(19), 19).treewidth == 2);
    CHECK_THROWS_AS(exact_treewidth(cycle_graph(25), 30), InputError);
}

TEST_CASE("exact treewidth matches exhaustive elimination orders")
{
    std::mt19937_64 rng(31);
    for (int round = 0; round < 40; ++round) {
        auto g = oracle::random_graph(rng, 1 + round % 8, 0.45);
        auto ex = exact_treewidth(g);
        CHECK(ex.treewidth == oracle::treewidth_by_permutations(g));
        CHECK(oracle::decomposition_ok(ex.decomposition, g));
        CHECK(width(ex.decomposition) == ex.treewidth);
    }
}

TEST_CASE("exact never exceeds the heuristics")
{
    std::mt19937_64 rng(37);
    for (int round = 0; round < 40; ++round) {
        auto g = oracle::random_graph(rng, 4 + round % 10, 0.4);
        auto tw = exact_treewidth(g).treewidth;
        for (auto m : {HeuristicMethod::MinFill, HeuristicMethod::MinDegree})
            for (std::uint64_t seed : {0, 1, 2})
                CHECK(tw <= width(heuristic_decomposition(g, m, seed, static_cast<int>(seed))));
    }
    for (int n = 1; n <= 8; ++n)
        CHECK(exact_treewidth(complete_graph(n)).treewidth == n - 1);
    for (int n = 3; n <= 10; ++n)
        CHECK(exact_treewidth(cycle_graph(n)).treewidth == 2);
}

TEST_CASE("augment_with_set")
{
    auto p = path_graph(4);
    auto td = heuristic_decomposition(p, HeuristicMethod::MinFill);
    CHECK(augment_with_set(p, td, {}) == td);

    auto k3 = complete_graph(3);
    TreeDecomposition edge{Graph(1), {{0, 1}}};
    auto aug = augment_with_set(k3, edge, {2});
    CHECK(validate(aug, k3).ok());
    CHECK(width(aug) == 2);

    // a decomposition of the wrong graph is refused
    CHECK_THROWS_AS(augment_with_set(k3, single_bag({0}), {2}), InputError);

    std::mt19937_64 rng(41);
    for (int round = 0; round < 50; ++round) {
        auto g = oracle::random_graph(rng, 3 + round % 9, 0.4);
        VertexSet x;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (rng() % 4 == 0)
                x.push_back(v);
        auto rest = remove_vertices(g, x);
        auto base = heuristic_decomposition(rest.graph, HeuristicMethod::MinDegree);
        auto out = augment_with_set(g, base, x);
        CHECK(oracle::decomposition_ok(out, g));
        CHECK(width(out) <= width(base) + static_cast<int>(x.size()));
    }
}

TEST_CASE("decompose_forest")
{
    auto edgeless = decompose_forest(Graph(4));
    CHECK(validate(edgeless, Graph(4)).ok());
    CHECK(width(edgeless) == 0);

    Graph k2(2, {{0, 1}});
    CHECK(width(decompose_forest(k2)) == 1);

    Graph paths(8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}});
    auto td = decompose_forest(paths);
    CHECK(oracle::decomposition_ok(td, paths));
    CHECK(width(td) == 1);

    CHECK(width(decompose_forest(Graph(0))) == -1);
    CHECK_THROWS_AS(decompose_forest(cycle_graph(5)), InputError);

    std::mt19937_64 rng(43);
    for (int round = 0; round < 30; ++round) {
        auto a = oracle::random_tree(rng, 1 + round % 6);
        auto b = oracle::random_tree(rng, 1 + round % 4);
        std::vector<Edge> edges = a.edges();
        for (auto &e : b.edges())
            edges.push_back({e.u + a.vertex_count(), e.v + a.vertex_count()});
        Graph f(a.vertex_count() + b.vertex_count(), edges);
        auto ftd = decompose_forest(f);
        CHECK(oracle::decomposition_ok(ftd, f));
        CHECK(width(ftd) == (f.edge_count() > 0 ? 1 : 0));
    }
}

TEST_CASE("attach_bag hangs a leaf off a node holding the anchor")
{
    auto p = path_graph(3);
    auto td = heuristic_decomposition(p, HeuristicMethod::MinFill);
    Graph extended(4, {{0, 1}, {1, 2}, {2, 3}});
    auto node = attach_bag(td, {2, 3}, 2);
    CHECK(node == td.node_count() - 1);
    CHECK(validate(td, extended).ok());
}

TEST_CASE("nice decomposition of a single edge")
{
    Graph k2(2, {{0, 1}});
    auto ntd = to_nice(single_bag({0, 1}), k2);
    std::vector<NiceKind> kinds;
    for (auto &node : ntd.nodes)
        kinds.push_back(node.kind);
    CHECK(kinds
          == std::vector<NiceKind>{NiceKind::Leaf, NiceKind::Introduce, NiceKind::Introduce, NiceKind::IntroduceEdge, NiceKind::Forget,
                                   NiceKind::Forget});
    CHECK(ntd.nodes.back().bag.empty());
    CHECK(check_nice(ntd, k2).empty());
}

TEST_CASE("nice decompositions preserve validity, width and edges")
{
    auto c4 = cycle_graph(4);
    auto c4td = heuristic_decomposition(c4, HeuristicMethod::MinFill);
    CHECK(to_nice(c4td, c4).width() == width(c4td));

    std::mt19937_64 rng(47);
    for (int round = 0; round < 60; ++round) {
        auto g = oracle::random_graph(rng, 1 + round % 10, 0.4);
        auto td = heuristic_decomposition(g, round % 2 ? HeuristicMethod::MinFill : HeuristicMethod::MinDegree);
        auto ntd = to_nice(td, g);
        CHECK(check_nice(ntd, g).empty());
        CHECK(ntd.width() == width(td));
        auto flat = flatten(ntd);
        CHECK(oracle::decomposition_ok(flat, g));
        CHECK(width(flat) == width(td));

        int edge_nodes = 0;
        std::set<int> seen;
        for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
            auto &node = ntd.nodes[i];
            for (auto c : node.children)
                CHECK(c < static_cast<int>(i));
            if (node.kind == NiceKind::IntroduceEdge) {
                ++edge_nodes;
                seen.insert(node.edge);
                auto &e = g.edge(node.edge);
                CHECK(std::binary_search(node.bag.begin(), node.bag.end(), e.u));
                CHECK(std::binary_search(node.bag.begin(), node.bag.end(), e.v));
            }
            if (node.kind == NiceKind::Join) {
                REQUIRE(node.children.size() == 2);
                CHECK(ntd.nodes[node.children[0]].bag == node.bag);
                CHECK(ntd.nodes[node.children[1]].bag == node.bag);
            }
        }
        CHECK(edge_nodes == g.edge_count());
        CHECK(static_cast<int>(seen.size()) == g.edge_count());
    }

    TreeDecomposition broken{Graph(1), {{0}}};
    CHECK_THROWS_AS(to_nice(broken, Graph(2, {{0, 1}})), InputError);
}

TEST_CASE("check_nice reports tampering")
{
    auto g = cycle_graph(4);
    auto ntd = to_nice(heuristic_decomposition(g, HeuristicMethod::MinFill), g);
    auto dropped = ntd;
    for (auto &node : dropped.nodes)
        if (node.kind == NiceKind::IntroduceEdge) {
            node.kind = NiceKind::Forget;
            break;
        }
    CHECK_FALSE(check_nice(dropped, g).empty());
    CHECK_FALSE(check_nice(ntd, cycle_graph(5)).empty());
}

TEST_CASE("decomposition json round trip")
{
    std::mt19937_64 rng(53);
    for (int round = 0; round < 10; ++round) {
        auto g = oracle::random_graph(rng, 9, 0.3);
        auto td = heuristic_decomposition(g, HeuristicMethod::MinFill);
        CHECK(decomposition_from_json(to_json(td)) == td);
    }
    CHECK_THROWS_AS(decomposition_from_json(Json::parse(R"({"nodes": 2, "tree_edges": [], "bags": [[0]]})")), InputError);
}
