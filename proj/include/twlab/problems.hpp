#pragma once

#include <twlab/graph.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace twlab {

/// Colors are positive integers; a Coloring holds one color per vertex.
using Coloring = std::vector<int>;

struct ListColoringInstance {
    Graph graph;
    std::vector<std::vector<int>> lists;

    /// One list per vertex with positive colors; duplicates are ignored.
    void validate() const;
    auto operator==(const ListColoringInstance &) const -> bool = default;
};

struct PrecoloringExtensionInstance {
    Graph graph;
    /// precolor[v] in 1..r, or 0 for an uncoloured vertex.
    std::vector<int> precolor;
    int r = 1;

    /// Throws InputError on an improper or out-of-range precoloring.
    void validate() const;
    auto operator==(const PrecoloringExtensionInstance &) const -> bool = default;
};

struct EquitableColoringInstance {
    Graph graph;
    int r = 1;

    void validate() const;
    auto operator==(const EquitableColoringInstance &) const -> bool = default;
};

struct GeneralFactorInstance {
    Graph graph;
    /// K(v), sorted, each a subset of 0..deg(v).
    std::vector<std::vector<int>> cardinality_sets;

    void validate() const;
    auto operator==(const GeneralFactorInstance &) const -> bool = default;
};

struct BooleanRelation {
    int arity = 1;
    std::vector<std::vector<std::uint8_t>> tuples;

    void validate() const;
    [[nodiscard]] auto contains(const std::vector<std::uint8_t> &tuple) const -> bool;
    auto operator==(const BooleanRelation &) const -> bool = default;
};

struct GensatConstraint {
    std::vector<int> scope;
    int relation = 0;

    auto operator==(const GensatConstraint &) const -> bool = default;
};

/// Variables are 0..variable_count-1; constraints reference relations by index.
struct GensatInstance {
    int variable_count = 0;
    std::vector<BooleanRelation> relations;
    std::vector<GensatConstraint> constraints;

    void validate() const;
    auto operator==(const GensatInstance &) const -> bool = default;
};

using Assignment = std::vector<std::uint8_t>;

struct ChosenOutdegreeInstance {
    Graph graph;
    EdgeWeighting weights;
    std::vector<Weight> rho;

    void validate() const;
    auto operator==(const ChosenOutdegreeInstance &) const -> bool = default;
};

/// Stands in for the unary encoding of weights: instances whose total
/// weight exceeds this are refused.
inline constexpr Weight default_weight_ceiling = 1'000'000;

struct MinMaxOutdegreeInstance {
    Graph graph;
    EdgeWeighting weights;
    Weight r = 1;

    void validate(Weight weight_ceiling = default_weight_ceiling) const;
    /// validate, except that r = 0 is admitted; the decision solvers answer
    /// it (yes only for edgeless graphs).
    void validate_decision(Weight weight_ceiling = default_weight_ceiling) const;
    auto operator==(const MinMaxOutdegreeInstance &) const -> bool = default;
};

// Certificate checkers. Each re-states its problem's defining condition
// directly and shares no code with the solvers.

auto is_list_coloring(const ListColoringInstance &inst, const Coloring &c) -> bool;
auto is_precoloring_extension(const PrecoloringExtensionInstance &inst, const Coloring &c) -> bool;
auto is_equitable_coloring(const EquitableColoringInstance &inst, const Coloring &c) -> bool;
auto is_general_factor(const GeneralFactorInstance &inst, const std::vector<int> &factor_edges) -> bool;
auto satisfies(const GensatInstance &inst, const Assignment &tau) -> bool;
auto is_admissible(const Graph &g, const EdgeWeighting &w, const std::vector<Weight> &rho, const Orientation &lam) -> bool;
auto max_weighted_outdegree(const Graph &g, const EdgeWeighting &w, const Orientation &lam) -> Weight;

// Brute-force oracles. Each returns the first witness found by its
// documented search order, or nullopt for a no-instance.

/// Backtracking in smallest-last (degeneracy) order, colors tried in increasing order.
auto bf_list_coloring(const ListColoringInstance &inst) -> std::optional<Coloring>;
/// Backtracking over vertices 0..n-1, colors 1..r ascending.
auto bf_precoloring(const PrecoloringExtensionInstance &inst) -> std::optional<Coloring>;
/// Backtracking over vertices 0..n-1, colors 1..r ascending; all r classes,
/// including empty ones, must have sizes within one of each other.
auto bf_equitable(const EquitableColoringInstance &inst) -> std::optional<Coloring>;
/// Edges in index order, "leave out" tried before "take"; returns edge indices of F.
auto bf_general_factor(const GeneralFactorInstance &inst) -> std::optional<std::vector<int>>;
/// Variables in index order, 0 before 1, pruning any constraint left without a matching tuple.
auto bf_gensat(const GensatInstance &inst) -> std::optional<Assignment>;
/// DFS over the lowest-index undecided edge, canonical direction (u -> v, u < v)
/// first, with residual-capacity propagation. The witness is therefore the
/// lexicographically first admissible orientation.
auto bf_chosen_outdegree(const ChosenOutdegreeInstance &inst) -> std::optional<Orientation>;
auto bf_min_max_outdegree(const MinMaxOutdegreeInstance &inst) -> std::optional<Orientation>;
/// Least r admitting an orientation of max weighted outdegree <= r (binary search on [0, total weight]).
auto bf_min_max_value(const Graph &g, const EdgeWeighting &w) -> Weight;
/// Transversals in lexicographic order (part 0's choice varies slowest);
/// returns one vertex per part, in part order.
auto bf_partitioned_clique(const PartitionedGraph &pg) -> std::optional<VertexSet>;
/// Lexicographically first k-clique of g (vertices ascending), if any.
auto bf_clique(const Graph &g, int k) -> std::optional<VertexSet>;

auto build_primal(const GensatInstance &inst) -> Graph;
auto build_dual(const GensatInstance &inst) -> Graph;
/// Variables keep their ids; constraint j becomes vertex variable_count + j.
auto build_incidence(const GensatInstance &inst) -> Graph;

} // namespace twlab
