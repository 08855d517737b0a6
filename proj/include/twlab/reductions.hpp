#pragma once

#include <twlab/problems.hpp>
#include <twlab/treewidth.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace twlab {

/// Role of one target vertex (or variable/constraint) in a construction,
/// e.g. tag "u" with coords {"i": 2, "j": 1}. Part and position coordinates
/// are 1-based; coordinates naming a source vertex use its vertex id.
struct Role {
    std::string tag;
    std::vector<std::pair<std::string, int>> coords;
    int vertex = -1;

    auto operator==(const Role &) const -> bool = default;
};

/// A reduction's target instance with a decomposition of the target graph
/// certifying `claimed_width_bound`.
template <typename Instance>
struct ReductionOutput {
    Instance instance;
    TreeDecomposition witness;
    int claimed_width_bound = 0;
    std::vector<Role> index;
    std::string note;
};

// ---- list coloring from partitioned clique --------------------------------

/// Target vertices 0..k-1 are the part representatives; pad vertices follow.
/// Color of source vertex v is v + 1.
auto pc_to_list_coloring(const PartitionedGraph &pg) -> ReductionOutput<ListColoringInstance>;

// ---- precoloring extension from list coloring -----------------------------

/// Colors of the list universe are relabelled 1..r in increasing order; each
/// vertex gets one precolored pendant per universe color missing from its list.
auto lc_to_precoloring(const ListColoringInstance &inst) -> ReductionOutput<PrecoloringExtensionInstance>;

/// Canonical no-instance: K2, vertex 0 precolored 1, r = 1.
auto canonical_infeasible_precoloring() -> PrecoloringExtensionInstance;

// ---- generalized satisfiability from clique --------------------------------

struct GensatReduction : ReductionOutput<GensatInstance> {
    Graph dual;
    TreeDecomposition dual_witness;
    int dual_bound = 0;
    Graph incidence;
    TreeDecomposition incidence_witness;
    int incidence_bound = 0;
};

/// Variable x_{i,l} (1-based) has id (i-1)*n + (l-1); constraint C_{i,j}
/// follows lexicographic (i, j) order. The main witness is the incidence one.
auto clique_to_gensat(const Graph &g, int k) -> GensatReduction;

// ---- chosen maximum outdegree from partitioned clique ----------------------

struct GadgetParameters {
    int k = 0;
    int n = 0;
    Weight big_n = 0; // N = n + 1
    Weight big_m = 0; // M = k (N^3 + N^2)
};

/// Vertex roles of the outdegree gadget, with all indices 1-based.
class GadgetIndex {
public:
    GadgetIndex() = default;
    /// Allocates a_1..a_k, then u, x, y for each (i, j) in lexicographic order.
    GadgetIndex(int k, int n);

    [[nodiscard]] auto a(int i) const -> Vertex { return a_.at(static_cast<std::size_t>(i - 1)); }
    [[nodiscard]] auto u(int i, int j) const -> Vertex { return uxy_.at(slot(i, j))[0]; }
    [[nodiscard]] auto x(int i, int j) const -> Vertex { return uxy_.at(slot(i, j))[1]; }
    [[nodiscard]] auto y(int i, int j) const -> Vertex { return uxy_.at(slot(i, j))[2]; }
    [[nodiscard]] auto b(int i, int ip) const -> Vertex { return bcd_.at({i, ip})[0]; }
    [[nodiscard]] auto c(int i, int ip) const -> Vertex { return bcd_.at({i, ip})[1]; }
    [[nodiscard]] auto d(int i, int ip) const -> Vertex { return bcd_.at({i, ip})[2]; }
    [[nodiscard]] auto e(int i, int ip, int q, int qp) const -> std::optional<Vertex>;
    /// E_{i,i'}: pairs (q, q') with v_i^q v_{i'}^{q'} an edge, lexicographic.
    [[nodiscard]] auto cross_pairs(int i, int ip) const -> const std::vector<std::pair<int, int>> & { return cross_.at({i, ip}); }
    [[nodiscard]] auto role_of(Vertex v) const -> const Role & { return roles_.at(static_cast<std::size_t>(v)); }
    [[nodiscard]] auto roles() const -> const std::vector<Role> & { return roles_; }
    [[nodiscard]] auto vertex_count() const -> int { return static_cast<int>(roles_.size()); }
    [[nodiscard]] auto k() const -> int { return k_; }
    [[nodiscard]] auto n() const -> int { return n_; }

    /// Allocates b, c, d for the pair i < i' followed by one e-vertex per
    /// cross pair; pairs must be added in lexicographic order.
    void add_pair(int i, int ip, std::vector<std::pair<int, int>> cross);

private:
    [[nodiscard]] auto slot(int i, int j) const -> std::size_t { return static_cast<std::size_t>((i - 1) * n_ + (j - 1)); }
    auto add(Role role) -> Vertex;

    int k_ = 0, n_ = 0;
    std::vector<Vertex> a_;
    std::vector<std::array<Vertex, 3>> uxy_;
    std::map<std::pair<int, int>, std::array<Vertex, 3>> bcd_;
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> cross_;
    std::map<std::array<int, 4>, Vertex> e_;
    std::vector<Role> roles_;
};

struct ChosenGadget : ReductionOutput<ChosenOutdegreeInstance> {
    GadgetParameters params;
    GadgetIndex gadget;
    PartitionedGraph source;
    /// Set when some E_{i,i'} is empty and the canonical no-instance was emitted.
    bool canonical_infeasible = false;
};

/// Builds the weighted gadget H. Vertex order: a_1..a_k; then u,x,y for
/// (i, j) lexicographic; then per pair i < i': b, c, d followed by its
/// e-vertices. Checks the gadget's size formulas and capacity arithmetic
/// before returning (std::logic_error on failure).
auto pc_to_chosen_outdegree(const PartitionedGraph &pg) -> ChosenGadget;

/// Canonical no-instance: K2 with weight 1 and rho = 0 on both ends.
auto canonical_infeasible_chosen() -> ChosenOutdegreeInstance;

/// Sum of the weights of special edges incident to v.
auto special_weight_sum(const ChosenGadget &gadget, Vertex v) -> Weight;

/// Reads the clique off an admissible orientation: p(i) is the j with
/// a_i -> u_i^j (j = 1 when a_i emits nothing). Returns source vertices
/// v_1^{p(1)}, ..., v_k^{p(k)}. Throws InputError if lam is not admissible,
/// std::logic_error if the result is not a clique.
auto extract_clique(const ChosenGadget &gadget, const Orientation &lam) -> VertexSet;

/// The explicit admissible orientation built from a transversal clique
/// (one source vertex per part, in part order).
auto clique_orientation(const ChosenGadget &gadget, const VertexSet &clique) -> Orientation;

// ---- minimum maximum outdegree from chosen maximum outdegree --------------

/// r = max rho; vertices with rho(v) < r get a triangle v, x_v, y_v with
/// weights r - rho(v), r - rho(v), r. When every rho is 0 the answer is
/// decided directly and a canonical equivalent instance is emitted.
auto chosen_to_minmax(const ChosenOutdegreeInstance &inst) -> ReductionOutput<MinMaxOutdegreeInstance>;

} // namespace twlab
