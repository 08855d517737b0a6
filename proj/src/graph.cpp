#include <twlab/graph.hpp>

#include <algorithm>
#include <numeric>
#include <string>

using std::pair;
using std::string;
using std::to_string;
using std::vector;

namespace twlab {

auto make_edge(Vertex a, Vertex b) -> Edge
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(int vertex_count) :
    Graph(vertex_count, {})
{
}

Graph::Graph(int vertex_count, vector<Edge> edges) :
    vertex_count_(vertex_count)
{
    if (vertex_count < 0)
        throw InputError("negative vertex count " + to_string(vertex_count));
    for (auto &e : edges) {
        if (e.u == e.v)
            throw InputError("self-loop at vertex " + to_string(e.u));
        if (! contains(e.u) || ! contains(e.v))
            throw InputError("edge {" + to_string(e.u) + "," + to_string(e.v) + "} has an endpoint outside 0.." + to_string(vertex_count - 1));
        e = make_edge(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end())
        throw InputError("duplicate edge {" + to_string(dup->u) + "," + to_string(dup->v) + "}");
    edges_ = std::move(edges);

    adjacency_.assign(static_cast<std::size_t>(vertex_count_), {});
    incident_.assign(static_cast<std::size_t>(vertex_count_), {});
    for (int i = 0; i < edge_count(); ++i) {
        auto [u, v] = edges_[static_cast<std::size_t>(i)];
        adjacency_[u].push_back(v);
        incident_[u].push_back(i);
        adjacency_[v].push_back(u);
        incident_[v].push_back(i);
    }
    // keep neighbour lists sorted, carrying the edge index along
    for (int v = 0; v < vertex_count_; ++v) {
        auto &adj = adjacency_[v];
        auto &inc = incident_[v];
        vector<int> perm(adj.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::sort(perm.begin(), perm.end(), [&](int a, int b) { return adj[a] < adj[b]; });
        vector<Vertex> sorted_adj;
        vector<int> sorted_inc;
        for (int p : perm) {
            sorted_adj.push_back(adj[p]);
            sorted_inc.push_back(inc[p]);
        }
        adj = std::move(sorted_adj);
        inc = std::move(sorted_inc);
    }
}

auto Graph::neighbors(Vertex v) const -> const vector<Vertex> &
{
    if (! contains(v))
        throw InputError("vertex " + to_string(v) + " out of range");
    return adjacency_[v];
}

auto Graph::incident_edges(Vertex v) const -> const vector<int> &
{
    if (! contains(v))
        throw InputError("vertex " + to_string(v) + " out of range");
    return incident_[v];
}

auto Graph::degree(Vertex v) const -> int
{
    return static_cast<int>(neighbors(v).size());
}

auto Graph::max_degree() const -> int
{
    int best = 0;
    for (auto &adj : adjacency_)
        best = std::max(best, static_cast<int>(adj.size()));
    return best;
}

auto Graph::edge_index(Vertex a, Vertex b) const -> std::optional<int>
{
    if (! contains(a) || ! contains(b) || a == b)
        return std::nullopt;
    auto e = make_edge(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e)
        return std::nullopt;
    return static_cast<int>(it - edges_.begin());
}

auto Graph::has_edge(Vertex a, Vertex b) const -> bool
{
    return edge_index(a, b).has_value();
}

EdgeWeighting::EdgeWeighting(const Graph &g, vector<Weight> weights) :
    weights_(std::move(weights))
{
    if (static_cast<int>(weights_.size()) != g.edge_count())
        throw InputError("weighting has " + to_string(weights_.size()) + " entries for " + to_string(g.edge_count()) + " edges");
    for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (weights_[i] < 1)
            throw InputError("edge " + to_string(i) + " has non-positive weight " + to_string(weights_[i]));
        total_ += weights_[i];
    }
}

auto EdgeWeighting::uniform(const Graph &g, Weight w) -> EdgeWeighting
{
    return EdgeWeighting(g, vector<Weight>(static_cast<std::size_t>(g.edge_count()), w));
}

auto EdgeWeighting::is_uniform() const -> bool
{
    return std::adjacent_find(weights_.begin(), weights_.end(), std::not_equal_to<>{}) == weights_.end();
}

PartitionedGraph::PartitionedGraph(Graph g, vector<VertexSet> parts) :
    graph_(std::move(g)),
    parts_(std::move(parts))
{
    part_of_.assign(static_cast<std::size_t>(graph_.vertex_count()), -1);
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i].size() != parts_.front().size())
            throw InputError("part " + to_string(i) + " has size " + to_string(parts_[i].size()) + ", expected " + to_string(parts_.front().size()));
        for (auto v : parts_[i]) {
            if (! graph_.contains(v))
                throw InputError("part " + to_string(i) + " names vertex " + to_string(v) + " outside the graph");
            if (part_of_[v] != -1)
                throw InputError("vertex " + to_string(v) + " appears in more than one part");
            part_of_[v] = static_cast<int>(i);
        }
    }
    for (Vertex v = 0; v < graph_.vertex_count(); ++v)
        if (part_of_[v] == -1)
            throw InputError("vertex " + to_string(v) + " is in no part");
    for (auto &e : graph_.edges())
        if (part_of_[e.u] == part_of_[e.v])
            throw InputError("edge {" + to_string(e.u) + "," + to_string(e.v) + "} lies inside part " + to_string(part_of_[e.u]));
}

Orientation::Orientation(const Graph &g, vector<pair<Vertex, Vertex>> arcs) :
    arcs_(std::move(arcs))
{
    if (static_cast<int>(arcs_.size()) != g.edge_count())
        throw InputError("orientation has " + to_string(arcs_.size()) + " arcs for " + to_string(g.edge_count()) + " edges");
    for (int i = 0; i < g.edge_count(); ++i) {
        auto [t, h] = arcs_[static_cast<std::size_t>(i)];
        auto &e = g.edge(i);
        if (! ((t == e.u && h == e.v) || (t == e.v && h == e.u)))
            throw InputError("arc (" + to_string(t) + "," + to_string(h) + ") does not orient edge {" + to_string(e.u) + "," + to_string(e.v) + "}");
    }
}

auto Orientation::from_forward_flags(const Graph &g, const vector<bool> &forward) -> Orientation
{
    if (static_cast<int>(forward.size()) != g.edge_count())
        throw InputError("orientation flag count does not match edge count");
    vector<pair<Vertex, Vertex>> arcs;
    arcs.reserve(forward.size());
    for (int i = 0; i < g.edge_count(); ++i) {
        auto &e = g.edge(i);
        arcs.emplace_back(forward[static_cast<std::size_t>(i)] ? pair{e.u, e.v} : pair{e.v, e.u});
    }
    return Orientation(g, std::move(arcs));
}

auto normalize_vertex_set(const Graph &g, const VertexSet &s) -> VertexSet
{
    VertexSet result = s;
    for (auto v : result)
        if (! g.contains(v))
            throw InputError("vertex " + to_string(v) + " out of range");
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

auto induced_subgraph(const Graph &g, const VertexSet &x) -> InducedSubgraph
{
    InducedSubgraph result;
    result.new_to_old = normalize_vertex_set(g, x);
    result.old_to_new.assign(static_cast<std::size_t>(g.vertex_count()), -1);
    for (std::size_t i = 0; i < result.new_to_old.size(); ++i)
        result.old_to_new[result.new_to_old[i]] = static_cast<int>(i);

    vector<Edge> edges;
    for (auto &e : g.edges()) {
        auto a = result.old_to_new[e.u], b = result.old_to_new[e.v];
        if (a != -1 && b != -1)
            edges.push_back(make_edge(a, b));
    }
    result.graph = Graph(static_cast<int>(result.new_to_old.size()), std::move(edges));
    return result;
}

auto remove_vertices(const Graph &g, const VertexSet &x) -> InducedSubgraph
{
    auto removed = normalize_vertex_set(g, x);
    VertexSet keep;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (! std::binary_search(removed.begin(), removed.end(), v))
            keep.push_back(v);
    return induced_subgraph(g, keep);
}

auto is_clique(const Graph &g, const VertexSet &s) -> bool
{
    auto set = normalize_vertex_set(g, s);
    for (std::size_t i = 0; i < set.size(); ++i)
        for (std::size_t j = i + 1; j < set.size(); ++j)
            if (! g.has_edge(set[i], set[j]))
                return false;
    return true;
}

auto weighted_outdegree(const Graph &g, const EdgeWeighting &w, const Orientation &lam, Vertex v) -> Weight
{
    if (w.size() != g.edge_count() || lam.size() != g.edge_count())
        throw InputError("weighting or orientation is not a companion of the graph");
    Weight total = 0;
    for (int e : g.incident_edges(v))
        if (lam.tail(e) == v)
            total += w.weight(e);
    return total;
}

auto complete_graph(int n) -> Graph
{
    vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

auto cycle_graph(int n) -> Graph
{
    if (n < 3)
        throw InputError("a cycle needs at least 3 vertices");
    vector<Edge> edges;
    for (int v = 0; v < n; ++v)
        edges.push_back(make_edge(v, (v + 1) % n));
    return Graph(n, std::move(edges));
}

auto path_graph(int n) -> Graph
{
    vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v)
        edges.push_back({v, v + 1});
    return Graph(n, std::move(edges));
}

auto star_graph(int leaves) -> Graph
{
    vector<Edge> edges;
    for (int v = 1; v <= leaves; ++v)
        edges.push_back({0, v});
    return Graph(leaves + 1, std::move(edges));
}

auto petersen_graph() -> Graph
{
    vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        edges.push_back(make_edge(i, (i + 1) % 5));         // outer cycle
        edges.push_back(make_edge(i, i + 5));               // spokes
        edges.push_back(make_edge(5 + i, 5 + (i + 2) % 5)); // inner pentagram
    }
    return Graph(10, std::move(edges));
}

} // namespace twlab
