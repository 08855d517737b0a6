#include <twlab/rng.hpp>
#include <twlab/treewidth.hpp>

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

using std::string;
using std::to_string;
using std::vector;

namespace twlab {

namespace {
    auto is_tree(const Graph &tree) -> bool
    {
        auto n = tree.vertex_count();
        if (n == 0 || tree.edge_count() != n - 1)
            return false;
        vector<char> seen(static_cast<std::size_t>(n), 0);
        vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (! stack.empty()) {
            auto t = stack.back();
            stack.pop_back();
            for (auto s : tree.neighbors(t))
                if (! seen[s]) {
                    seen[s] = 1;
                    ++reached;
                    stack.push_back(s);
                }
        }
        return reached == n;
    }

    auto sorted_unique(VertexSet s) -> VertexSet
    {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    auto contains(const VertexSet &sorted, Vertex v) -> bool
    {
        return std::binary_search(sorted.begin(), sorted.end(), v);
    }

    /// Elimination on a mutable copy of the graph; returns the width the
    /// order induces, optionally recording each vertex's later neighbours.
    class EliminationGraph {
    public:
        explicit EliminationGraph(const Graph &g) :
            adj_(static_cast<std::size_t>(g.vertex_count())),
            alive_(static_cast<std::size_t>(g.vertex_count()), 1)
        {
            for (auto &e : g.edges()) {
                adj_[e.u].insert(e.v);
                adj_[e.v].insert(e.u);
            }
        }

        [[nodiscard]] auto degree(Vertex v) const -> int { return static_cast<int>(adj_[v].size()); }

        [[nodiscard]] auto fill(Vertex v) const -> long
        {
            long missing = 0;
            for (auto a = adj_[v].begin(); a != adj_[v].end(); ++a)
                for (auto b = std::next(a); b != adj_[v].end(); ++b)
                    if (! adj_[*a].count(*b))
                        ++missing;
            return missing;
        }

        auto eliminate(Vertex v) -> VertexSet
        {
            VertexSet nb(adj_[v].begin(), adj_[v].end());
            for (auto a : nb) {
                adj_[a].erase(v);
                for (auto b : nb)
                    if (a != b)
                        adj_[a].insert(b);
            }
            adj_[v].clear();
            alive_[v] = 0;
            return nb;
        }

        [[nodiscard]] auto alive(Vertex v) const -> bool { return alive_[v]; }

    private:
        vector<std::set<Vertex>> adj_;
        vector<char> alive_;
    };

    auto order_width(const Graph &g, const EliminationOrder &ord) -> int
    {
        EliminationGraph eg(g);
        int w = -1;
        for (auto v : ord)
            w = std::max(w, static_cast<int>(eg.eliminate(v).size()));
        return w;
    }

    auto greedy_order(const Graph &g, HeuristicMethod method, const vector<std::uint64_t> &priority) -> EliminationOrder
    {
        EliminationGraph eg(g);
        EliminationOrder ord;
        auto n = g.vertex_count();
        for (int step = 0; step < n; ++step) {
            Vertex best = -1;
            long best_score = 0;
            for (Vertex v = 0; v < n; ++v) {
                if (! eg.alive(v))
                    continue;
                long score = method == HeuristicMethod::MinFill ? eg.fill(v) : eg.degree(v);
                if (best == -1 || score < best_score || (score == best_score && priority[v] < priority[best])) {
                    best = v;
                    best_score = score;
                }
            }
            eg.eliminate(best);
            ord.push_back(best);
        }
        return ord;
    }
}

auto ValidationResult::summary() const -> string
{
    if (ok())
        return "ok";
    std::ostringstream out;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i)
            out << "; ";
        out << violations[i].message;
    }
    return out.str();
}

auto validate(const TreeDecomposition &td, const Graph &g) -> ValidationResult
{
    ValidationResult result;
    auto nodes = td.node_count();
    if (td.tree.vertex_count() != nodes || ! is_tree(td.tree)) {
        result.violations.push_back({ViolationKind::NotATree, -1, {}, {},
            "decomposition tree is not a tree (" + to_string(td.tree.vertex_count()) + " nodes, " + to_string(td.tree.edge_count()) + " edges, " + to_string(nodes) + " bags)"});
        return result;
    }

    vector<vector<int>> occurrences(static_cast<std::size_t>(g.vertex_count()));
    for (int t = 0; t < nodes; ++t)
        for (auto v : td.bags[t]) {
            if (! g.contains(v)) {
                result.violations.push_back({ViolationKind::VertexOutOfRange, v, {}, {t},
                    "bag " + to_string(t) + " names vertex " + to_string(v) + " outside the graph"});
                continue;
            }
            if (occurrences[v].empty() || occurrences[v].back() != t)
                occurrences[v].push_back(t);
        }

    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (occurrences[v].empty())
            result.violations.push_back({ViolationKind::UncoveredVertex, v, {}, {},
                "vertex " + to_string(v) + " in no bag"});

    for (auto &e : g.edges()) {
        auto &a = occurrences[e.u];
        auto &b = occurrences[e.v];
        vector<int> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (common.empty())
            result.violations.push_back({ViolationKind::UncoveredEdge, -1, e, {},
                "edge {" + to_string(e.u) + "," + to_string(e.v) + "} in no bag"});
    }

    vector<char> holds(static_cast<std::size_t>(nodes), 0), seen(static_cast<std::size_t>(nodes), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto &occ = occurrences[v];
        if (occ.size() < 2)
            continue;
        for (auto t : occ)
            holds[t] = 1;
        vector<int> stack{occ.front()};
        seen[occ.front()] = 1;
        while (! stack.empty()) {
            auto t = stack.back();
            stack.pop_back();
            for (auto s : td.tree.neighbors(t))
                if (holds[s] && ! seen[s]) {
                    seen[s] = 1;
                    stack.push_back(s);
                }
        }
        for (auto t : occ)
            if (! seen[t]) {
                result.violations.push_back({ViolationKind::DisconnectedOccurrence, v, {}, {occ.front(), t},
                    "bags containing vertex " + to_string(v) + " are disconnected (nodes " + to_string(occ.front()) + " and " + to_string(t) + ")"});
                break;
            }
        for (auto t : occ)
            holds[t] = seen[t] = 0;
        std::fill(seen.begin(), seen.end(), 0);
    }
    return result;
}

auto width(const TreeDecomposition &td) -> int
{
    int w = -1;
    for (auto &bag : td.bags)
        w = std::max(w, static_cast<int>(bag.size()) - 1);
    return w;
}

auto from_elimination_order(const Graph &g, const EliminationOrder &ord) -> TreeDecomposition
{
    auto n = g.vertex_count();
    if (static_cast<int>(ord.size()) != n)
        throw InputError("elimination order has " + to_string(ord.size()) + " entries for " + to_string(n) + " vertices");
    vector<int> position(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        auto v = ord[i];
        if (! g.contains(v) || position[v] != -1)
            throw InputError("elimination order is not a permutation (entry " + to_string(v) + ")");
        position[v] = i;
    }
    if (n == 0)
        return {Graph(1), {{}}};

    EliminationGraph eg(g);
    vector<VertexSet> bags(static_cast<std::size_t>(n));
    vector<Edge> tree_edges;
    for (int i = 0; i < n; ++i) {
        auto v = ord[i];
        auto later = eg.eliminate(v);
        auto bag = later;
        bag.push_back(v);
        bags[i] = sorted_unique(std::move(bag));
        if (i == n - 1)
            break;
        // parent bag: the earliest-eliminated later neighbour, else the last bag
        int parent = n - 1;
        for (auto u : later)
            parent = std::min(parent, position[u]);
        tree_edges.push_back(make_edge(i, parent));
    }
    return {Graph(n, std::move(tree_edges)), std::move(bags)};
}

auto heuristic_order(const Graph &g, HeuristicMethod method, std::uint64_t seed, int restarts) -> EliminationOrder
{
    vector<std::uint64_t> priority(static_cast<std::size_t>(g.vertex_count()));
    std::iota(priority.begin(), priority.end(), std::uint64_t{0});
    auto best = greedy_order(g, method, priority);
    auto best_width = order_width(g, best);
    for (int r = 0; r < restarts; ++r) {
        Rng rng(mix64(seed + static_cast<std::uint64_t>(r)));
        rng.shuffle(priority);
        auto ord = greedy_order(g, method, priority);
        auto w = order_width(g, ord);
        if (w < best_width) {
            best = std::move(ord);
            best_width = w;
        }
    }
    return best;
}

auto heuristic_decomposition(const Graph &g, HeuristicMethod method, std::uint64_t seed, int restarts) -> TreeDecomposition
{
    return from_elimination_order(g, heuristic_order(g, method, seed, restarts));
}

auto exact_treewidth(const Graph &g, int limit) -> ExactTreewidth
{
    constexpr int hard_cap = 24;
    auto n = g.vertex_count();
    limit = std::min(limit, hard_cap);
    if (n > limit)
        throw InputError("exact treewidth refused: " + to_string(n) + " vertices exceeds the limit of " + to_string(limit) + "; use a heuristic (min-fill or min-degree) instead");
    if (n == 0)
        return {-1, {Graph(1), {{}}}};

    using Mask = std::uint32_t;
    vector<Mask> nb(static_cast<std::size_t>(n), 0);
    for (auto &e : g.edges()) {
        nb[e.u] |= Mask{1} << e.v;
        nb[e.v] |= Mask{1} << e.u;
    }

    // |Q(S, v)|: vertices outside S + v reachable from v through S
    auto q = [&](Mask s, int v) {
        Mask reached = Mask{1} << v;
        Mask frontier = nb[v];
        for (;;) {
            Mask grow = frontier & s & ~reached;
            if (! grow)
                break;
            reached |= grow;
            while (grow) {
                auto b = std::countr_zero(grow);
                grow &= grow - 1;
                frontier |= nb[b];
            }
        }
        return std::popcount(frontier & ~s & ~reached);
    };

    auto full = (std::size_t{1} << n);
    vector<std::uint8_t> best(full, 0), last(full, 0);
    for (std::size_t s = 1; s < full; ++s) {
        auto mask = static_cast<Mask>(s);
        int value = std::numeric_limits<int>::max();
        int choice = -1;
        for (Mask rest = mask; rest; rest &= rest - 1) {
            auto v = std::countr_zero(rest);
            auto without = mask & ~(Mask{1} << v);
            auto candidate = std::max<int>(best[without], q(without, v));
            if (candidate < value) {
                value = candidate;
                choice = v;
            }
        }
        best[s] = static_cast<std::uint8_t>(value);
        last[s] = static_cast<std::uint8_t>(choice);
    }

    EliminationOrder ord(static_cast<std::size_t>(n));
    auto s = static_cast<Mask>(full - 1);
    for (int i = n - 1; i >= 0; --i) {
        ord[i] = last[s];
        s &= ~(Mask{1} << last[s]);
    }
    auto td = from_elimination_order(g, ord);
    return {best[full - 1], std::move(td)};
}

auto augment_with_set(const Graph &g, const TreeDecomposition &td_of_rest, const VertexSet &x) -> TreeDecomposition
{
    auto rest = remove_vertices(g, x);
    auto check = validate(td_of_rest, rest.graph);
    if (! check.ok())
        throw InputError("decomposition is not valid for G - X: " + check.summary());
    auto added = normalize_vertex_set(g, x);
    TreeDecomposition result{td_of_rest.tree, {}};
    for (auto &bag : td_of_rest.bags) {
        VertexSet mapped = added;
        for (auto v : bag)
            mapped.push_back(rest.new_to_old[v]);
        result.bags.push_back(sorted_unique(std::move(mapped)));
    }
    return result;
}

auto decompose_forest(const Graph &g) -> TreeDecomposition
{
    auto n = g.vertex_count();
    vector<int> uf(static_cast<std::size_t>(n));
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int v) {
        while (uf[v] != v)
            v = uf[v] = uf[uf[v]];
        return v;
    };
    for (auto &e : g.edges()) {
        auto a = find(e.u), b = find(e.v);
        if (a == b)
            throw InputError("graph is not a forest: edge {" + to_string(e.u) + "," + to_string(e.v) + "} closes a cycle");
        uf[a] = b;
    }
    if (n == 0)
        return {Graph(1), {{}}};

    vector<VertexSet> bags;
    vector<Edge> tree_edges;
    vector<char> seen(static_cast<std::size_t>(n), 0);
    // bag holding the edge to v's parent, or v's own singleton/first bag for roots
    vector<int> home(static_cast<std::size_t>(n), -1);
    int previous_component = -1;
    for (Vertex root = 0; root < n; ++root) {
        if (seen[root])
            continue;
        seen[root] = 1;
        int component_bag = -1;
        std::deque<Vertex> queue{root};
        while (! queue.empty()) {
            auto p = queue.front();
            queue.pop_front();
            for (auto c : g.neighbors(p)) {
                if (seen[c])
                    continue;
                seen[c] = 1;
                auto id = static_cast<int>(bags.size());
                bags.push_back({std::min(p, c), std::max(p, c)});
                if (home[p] != -1)
                    tree_edges.push_back(make_edge(id, home[p]));
                else
                    home[p] = id;
                home[c] = id;
                if (component_bag == -1)
                    component_bag = id;
                queue.push_back(c);
            }
        }
        if (component_bag == -1) {
            component_bag = static_cast<int>(bags.size());
            bags.push_back({root});
        }
        if (previous_component != -1)
            tree_edges.push_back(make_edge(previous_component, component_bag));
        previous_component = component_bag;
    }
    auto nodes = static_cast<int>(bags.size());
    return {Graph(nodes, std::move(tree_edges)), std::move(bags)};
}

auto attach_bag(TreeDecomposition &td, VertexSet bag, Vertex anchor) -> int
{
    attach_bags(td, {{std::move(bag), anchor}});
    return td.node_count() - 1;
}

void attach_bags(TreeDecomposition &td, const vector<std::pair<VertexSet, Vertex>> &leaves)
{
    auto host_of = [&](Vertex anchor) {
        if (anchor >= 0)
            for (int t = 0; t < td.node_count(); ++t)
                if (contains(td.bags[t], anchor))
                    return t;
        return 0;
    };
    vector<int> hosts;
    for (auto &[bag, anchor] : leaves)
        hosts.push_back(host_of(anchor));
    auto edges = td.tree.edges();
    auto base = td.node_count();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        auto id = base + static_cast<int>(i);
        if (id > 0)
            edges.push_back(make_edge(hosts[i], id));
        td.bags.push_back(sorted_unique(leaves[i].first));
    }
    td.tree = Graph(td.node_count(), std::move(edges));
}

auto NiceTreeDecomposition::width() const -> int
{
    int w = -1;
    for (auto &node : nodes)
        w = std::max(w, static_cast<int>(node.bag.size()) - 1);
    return w;
}

auto to_nice(const TreeDecomposition &td, const Graph &g) -> NiceTreeDecomposition
{
    auto check = validate(td, g);
    if (! check.ok())
        throw InputError("cannot normalise an invalid decomposition: " + check.summary());

    NiceTreeDecomposition ntd;
    vector<char> introduced(static_cast<std::size_t>(g.edge_count()), 0);

    auto add = [&](NiceNode node) {
        ntd.nodes.push_back(std::move(node));
        return static_cast<int>(ntd.nodes.size()) - 1;
    };
    auto introduce = [&](int cur, Vertex v) {
        auto bag = ntd.nodes[cur].bag;
        bag.insert(std::upper_bound(bag.begin(), bag.end(), v), v);
        return add({NiceKind::Introduce, v, -1, {cur}, std::move(bag)});
    };
    // edges towards vertices still in the bag are introduced just before v leaves
    auto forget = [&](int cur, Vertex v) {
        auto bag = ntd.nodes[cur].bag;
        for (auto u : bag) {
            if (u == v)
                continue;
            auto e = g.edge_index(u, v);
            if (e && ! introduced[*e]) {
                introduced[*e] = 1;
                cur = add({NiceKind::IntroduceEdge, -1, *e, {cur}, bag});
            }
        }
        bag.erase(std::lower_bound(bag.begin(), bag.end(), v));
        return add({NiceKind::Forget, v, -1, {cur}, std::move(bag)});
    };

    auto nodes = td.node_count();
    vector<int> parent(static_cast<std::size_t>(nodes), -1), bfs{0};
    vector<vector<int>> children(static_cast<std::size_t>(nodes));
    vector<char> seen(static_cast<std::size_t>(nodes), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < bfs.size(); ++i)
        for (auto s : td.tree.neighbors(bfs[i]))
            if (! seen[s]) {
                seen[s] = 1;
                parent[s] = bfs[i];
                children[bfs[i]].push_back(s);
                bfs.push_back(s);
            }

    vector<VertexSet> bags;
    for (auto &bag : td.bags)
        bags.push_back(sorted_unique(bag));

    vector<int> top(static_cast<std::size_t>(nodes), -1);
    for (auto it = bfs.rbegin(); it != bfs.rend(); ++it) {
        auto t = *it;
        auto &bag = bags[t];
        vector<int> branches;
        if (children[t].empty()) {
            auto cur = add({NiceKind::Leaf, -1, -1, {}, {}});
            for (auto v : bag)
                cur = introduce(cur, v);
            branches.push_back(cur);
        }
        for (auto c : children[t]) {
            auto cur = top[c];
            for (auto v : bags[c])
                if (! contains(bag, v))
                    cur = forget(cur, v);
            for (auto v : bag)
                if (! contains(bags[c], v))
                    cur = introduce(cur, v);
            branches.push_back(cur);
        }
        auto cur = branches.front();
        for (std::size_t i = 1; i < branches.size(); ++i)
            cur = add({NiceKind::Join, -1, -1, {cur, branches[i]}, bag});
        top[t] = cur;
    }
    auto cur = top[0];
    for (auto v : bags[0])
        cur = forget(cur, v);

    if (std::find(introduced.begin(), introduced.end(), 0) != introduced.end())
        throw std::logic_error("to_nice: some edge was never introduced");
    return ntd;
}

auto check_nice(const NiceTreeDecomposition &ntd, const Graph &g) -> vector<string>
{
    vector<string> problems;
    if (ntd.nodes.empty()) {
        problems.emplace_back("nice decomposition has no nodes");
        return problems;
    }
    vector<int> parents(ntd.nodes.size(), 0);
    vector<int> edge_seen(static_cast<std::size_t>(g.edge_count()), 0);
    for (int t = 0; t < static_cast<int>(ntd.nodes.size()); ++t) {
        auto &node = ntd.nodes[t];
        auto where = "node " + to_string(t) + ": ";
        if (! std::is_sorted(node.bag.begin(), node.bag.end()) || std::adjacent_find(node.bag.begin(), node.bag.end()) != node.bag.end()) {
            problems.push_back(where + "bag not sorted/unique");
            continue;
        }
        for (auto c : node.children) {
            if (c < 0 || c >= t)
                problems.push_back(where + "child " + to_string(c) + " does not precede its parent");
            else
                ++parents[c];
        }
        auto expect_children = [&](std::size_t count) {
            if (node.children.size() != count) {
                problems.push_back(where + "expected " + to_string(count) + " children");
                return false;
            }
            for (auto c : node.children)
                if (c < 0 || c >= t)
                    return false;
            return true;
        };
        switch (node.kind) {
        case NiceKind::Leaf:
            if (expect_children(0) && ! node.bag.empty())
                problems.push_back(where + "leaf bag not empty");
            break;
        case NiceKind::Introduce:
        case NiceKind::Forget:
            if (expect_children(1)) {
                auto &child = ntd.nodes[node.children[0]].bag;
                auto &bigger = node.kind == NiceKind::Introduce ? node.bag : child;
                auto &smaller = node.kind == NiceKind::Introduce ? child : node.bag;
                auto with = smaller;
                if (! contains(smaller, node.vertex)) {
                    with.push_back(node.vertex);
                    std::sort(with.begin(), with.end());
                }
                if (contains(smaller, node.vertex) || with != bigger)
                    problems.push_back(where + "bag does not differ from child by exactly vertex " + to_string(node.vertex));
            }
            break;
        case NiceKind::Join:
            if (expect_children(2))
                for (auto c : node.children)
                    if (ntd.nodes[c].bag != node.bag)
                        problems.push_back(where + "join child bag differs");
            break;
        case NiceKind::IntroduceEdge:
            if (expect_children(1)) {
                if (ntd.nodes[node.children[0]].bag != node.bag)
                    problems.push_back(where + "introduce-edge changes the bag");
                if (node.edge < 0 || node.edge >= g.edge_count())
                    problems.push_back(where + "edge index out of range");
                else {
                    ++edge_seen[node.edge];
                    auto &e = g.edge(node.edge);
                    if (! contains(node.bag, e.u) || ! contains(node.bag, e.v))
                        problems.push_back(where + "edge endpoints not in bag");
                }
            }
            break;
        }
    }
    for (int t = 0; t + 1 < static_cast<int>(ntd.nodes.size()); ++t)
        if (parents[t] != 1)
            problems.push_back("node " + to_string(t) + " has " + to_string(parents[t]) + " parents");
    if (! ntd.nodes.back().bag.empty())
        problems.emplace_back("root bag not empty");
    for (int e = 0; e < g.edge_count(); ++e)
        if (edge_seen[e] != 1)
            problems.push_back("edge " + to_string(e) + " introduced " + to_string(edge_seen[e]) + " times");
    if (problems.empty()) {
        auto flat = validate(flatten(ntd), g);
        if (! flat.ok())
            problems.push_back("flattened decomposition invalid: " + flat.summary());
    }
    return problems;
}

auto flatten(const NiceTreeDecomposition &ntd) -> TreeDecomposition
{
    vector<Edge> edges;
    vector<VertexSet> bags;
    for (int t = 0; t < static_cast<int>(ntd.nodes.size()); ++t) {
        bags.push_back(ntd.nodes[t].bag);
        for (auto c : ntd.nodes[t].children)
            edges.push_back(make_edge(c, t));
    }
    auto n = static_cast<int>(bags.size());
    return {Graph(n, std::move(edges)), std::move(bags)};
}

} // namespace twlab
