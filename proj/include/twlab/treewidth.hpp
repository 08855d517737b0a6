#pragma once

#include <twlab/graph.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace twlab {

/// A tree T together with one bag per tree node; bag i belongs to node i.
struct TreeDecomposition {
    Graph tree;
    std::vector<VertexSet> bags;

    [[nodiscard]] auto node_count() const -> int { return static_cast<int>(bags.size()); }

    auto operator==(const TreeDecomposition &) const -> bool = default;
};

enum class ViolationKind {
    NotATree,
    VertexOutOfRange,
    UncoveredVertex,
    UncoveredEdge,
    DisconnectedOccurrence,
};

struct Violation {
    ViolationKind kind;
    Vertex vertex = -1;
    Edge edge{};
    /// Offending tree nodes: for DisconnectedOccurrence, one node from each of two components.
    std::vector<int> nodes;
    std::string message;
};

struct ValidationResult {
    std::vector<Violation> violations;

    [[nodiscard]] auto ok() const -> bool { return violations.empty(); }
    [[nodiscard]] auto summary() const -> std::string;
};

auto validate(const TreeDecomposition &td, const Graph &g) -> ValidationResult;

/// max bag size - 1; -1 when every bag is empty.
auto width(const TreeDecomposition &td) -> int;

using EliminationOrder = std::vector<Vertex>;

/// Fill-in construction: one bag per vertex holding the vertex and its later
/// neighbours in the filled graph. Throws InputError unless ord is a permutation.
auto from_elimination_order(const Graph &g, const EliminationOrder &ord) -> TreeDecomposition;

enum class HeuristicMethod { MinFill, MinDegree };

/// Greedy elimination by the method's criterion, ties broken by lowest vertex index.
/// `restarts` further runs break ties by a permutation drawn from `seed`
/// instead; the narrowest result (earliest on ties) is returned.
auto heuristic_order(const Graph &g, HeuristicMethod method, std::uint64_t seed = 0, int restarts = 0) -> EliminationOrder;
auto heuristic_decomposition(const Graph &g, HeuristicMethod method, std::uint64_t seed = 0, int restarts = 0) -> TreeDecomposition;

struct ExactTreewidth {
    int treewidth;
    TreeDecomposition decomposition;
};

inline constexpr int default_exact_limit = 18;

/// Subset dynamic programming over elimination prefixes. Refuses (InputError)
/// graphs with more than `limit` vertices; limit itself is capped at 24.
auto exact_treewidth(const Graph &g, int limit = default_exact_limit) -> ExactTreewidth;

/// Given a decomposition of g - x (indexed as remove_vertices(g, x) indexes
/// it), adds x to every bag and maps back to g's vertex ids.
auto augment_with_set(const Graph &g, const TreeDecomposition &td_of_rest, const VertexSet &x) -> TreeDecomposition;

/// Width <= 1 decomposition of an acyclic graph. Throws InputError naming
/// an edge that closes a cycle.
auto decompose_forest(const Graph &g) -> TreeDecomposition;

/// Attaches a new bag to some node containing `anchor` (or to node 0 if
/// anchor is -1 or absent). Returns the new node index.
auto attach_bag(TreeDecomposition &td, VertexSet bag, Vertex anchor) -> int;
/// attach_bag for many (bag, anchor) pairs at once; anchors are looked up in
/// the original decomposition.
void attach_bags(TreeDecomposition &td, const std::vector<std::pair<VertexSet, Vertex>> &leaves);

enum class NiceKind { Leaf, Introduce, Forget, Join, IntroduceEdge };

struct NiceNode {
    NiceKind kind = NiceKind::Leaf;
    Vertex vertex = -1;  // Introduce / Forget
    int edge = -1;       // IntroduceEdge: edge index in the decomposed graph
    std::vector<int> children;
    VertexSet bag;       // sorted
};

/// Rooted nice decomposition. Children always precede their parent, so
/// node index order is a valid bottom-up order; the root is the last node
/// and has an empty bag.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;

    [[nodiscard]] auto root() const -> int { return static_cast<int>(nodes.size()) - 1; }
    [[nodiscard]] auto width() const -> int;
};

/// Throws InputError if td is not valid for g.
auto to_nice(const TreeDecomposition &td, const Graph &g) -> NiceTreeDecomposition;

/// Structural check used by the solvers; empty result means well formed.
auto check_nice(const NiceTreeDecomposition &ntd, const Graph &g) -> std::vector<std::string>;

/// The plain decomposition underlying a nice one (tree = node parent links).
auto flatten(const NiceTreeDecomposition &ntd) -> TreeDecomposition;

} // namespace twlab
