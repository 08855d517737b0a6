#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twlab {

/// Raised for malformed input: out-of-range vertices, loops, duplicate
/// edges, companion mismatches, guard violations.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Vertex = int;
using Weight = std::int64_t;
using VertexSet = std::vector<Vertex>;

/// Undirected edge in canonical form, `u < v`.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    auto operator<=>(const Edge &) const = default;
};

auto make_edge(Vertex a, Vertex b) -> Edge;

/// Finite simple undirected graph on vertices 0..vertex_count()-1.
///
/// Edges are kept sorted in canonical order; the position of an edge in
/// `edges()` is its edge index, which weightings and orientations use as key.
class Graph {
public:
    Graph() = default;
    explicit Graph(int vertex_count);
    /// Rejects loops, duplicates and out-of-range endpoints with InputError.
    Graph(int vertex_count, std::vector<Edge> edges);

    [[nodiscard]] auto vertex_count() const -> int { return vertex_count_; }
    [[nodiscard]] auto edge_count() const -> int { return static_cast<int>(edges_.size()); }
    [[nodiscard]] auto edges() const -> const std::vector<Edge> & { return edges_; }
    [[nodiscard]] auto edge(int index) const -> const Edge & { return edges_.at(static_cast<std::size_t>(index)); }
    [[nodiscard]] auto neighbors(Vertex v) const -> const std::vector<Vertex> &;
    /// Edge indices incident to v, aligned with neighbors(v).
    [[nodiscard]] auto incident_edges(Vertex v) const -> const std::vector<int> &;
    [[nodiscard]] auto degree(Vertex v) const -> int;
    [[nodiscard]] auto max_degree() const -> int;
    [[nodiscard]] auto has_edge(Vertex a, Vertex b) const -> bool;
    [[nodiscard]] auto edge_index(Vertex a, Vertex b) const -> std::optional<int>;
    [[nodiscard]] auto contains(Vertex v) const -> bool { return v >= 0 && v < vertex_count_; }

    auto operator==(const Graph &other) const -> bool
    {
        return vertex_count_ == other.vertex_count_ && edges_ == other.edges_;
    }

private:
    int vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::vector<int>> incident_;
};

/// Positive integer weight per edge of a companion graph, keyed by edge index.
class EdgeWeighting {
public:
    EdgeWeighting() = default;
    EdgeWeighting(const Graph &g, std::vector<Weight> weights);
    static auto uniform(const Graph &g, Weight w) -> EdgeWeighting;

    [[nodiscard]] auto weight(int edge_index) const -> Weight { return weights_.at(static_cast<std::size_t>(edge_index)); }
    [[nodiscard]] auto weights() const -> const std::vector<Weight> & { return weights_; }
    [[nodiscard]] auto total_weight() const -> Weight { return total_; }
    [[nodiscard]] auto size() const -> int { return static_cast<int>(weights_.size()); }
    [[nodiscard]] auto is_uniform() const -> bool;

    auto operator==(const EdgeWeighting &other) const -> bool { return weights_ == other.weights_; }

private:
    std::vector<Weight> weights_;
    Weight total_ = 0;
};

/// Balanced k-partite graph with an explicit partition V_1..V_k.
class PartitionedGraph {
public:
    PartitionedGraph() = default;
    /// Validates that parts partition V(g), have equal size, and that no
    /// edge lies inside a part.
    PartitionedGraph(Graph g, std::vector<VertexSet> parts);

    [[nodiscard]] auto graph() const -> const Graph & { return graph_; }
    [[nodiscard]] auto parts() const -> const std::vector<VertexSet> & { return parts_; }
    [[nodiscard]] auto part_count() const -> int { return static_cast<int>(parts_.size()); }
    [[nodiscard]] auto part_size() const -> int { return parts_.empty() ? 0 : static_cast<int>(parts_.front().size()); }
    [[nodiscard]] auto part_of(Vertex v) const -> int { return part_of_.at(static_cast<std::size_t>(v)); }

    auto operator==(const PartitionedGraph &other) const -> bool
    {
        return graph_ == other.graph_ && parts_ == other.parts_;
    }

private:
    Graph graph_;
    std::vector<VertexSet> parts_;
    std::vector<int> part_of_;
};

/// A direction for every edge of a companion graph: arc(e) = (tail, head).
class Orientation {
public:
    Orientation() = default;
    /// Each arc must be an ordering of the edge with the same index.
    Orientation(const Graph &g, std::vector<std::pair<Vertex, Vertex>> arcs);
    /// forward[e] means edge (u,v), u < v, is directed u -> v.
    static auto from_forward_flags(const Graph &g, const std::vector<bool> &forward) -> Orientation;

    [[nodiscard]] auto arc(int edge_index) const -> const std::pair<Vertex, Vertex> & { return arcs_.at(static_cast<std::size_t>(edge_index)); }
    [[nodiscard]] auto arcs() const -> const std::vector<std::pair<Vertex, Vertex>> & { return arcs_; }
    [[nodiscard]] auto tail(int edge_index) const -> Vertex { return arc(edge_index).first; }
    [[nodiscard]] auto size() const -> int { return static_cast<int>(arcs_.size()); }

    auto operator==(const Orientation &other) const -> bool { return arcs_ == other.arcs_; }

private:
    std::vector<std::pair<Vertex, Vertex>> arcs_;
};

struct InducedSubgraph {
    Graph graph;
    /// old_to_new[v] is the new index of v, or -1 when v was dropped.
    std::vector<int> old_to_new;
    std::vector<Vertex> new_to_old;
};

auto induced_subgraph(const Graph &g, const VertexSet &x) -> InducedSubgraph;
auto remove_vertices(const Graph &g, const VertexSet &x) -> InducedSubgraph;
auto is_clique(const Graph &g, const VertexSet &s) -> bool;
auto weighted_outdegree(const Graph &g, const EdgeWeighting &w, const Orientation &lam, Vertex v) -> Weight;

/// Sorted, duplicate-free copy of s; throws InputError if any vertex is out of range.
auto normalize_vertex_set(const Graph &g, const VertexSet &s) -> VertexSet;

auto complete_graph(int n) -> Graph;
auto cycle_graph(int n) -> Graph;
auto path_graph(int n) -> Graph;
auto star_graph(int leaves) -> Graph;
auto petersen_graph() -> Graph;

} // namespace twlab
