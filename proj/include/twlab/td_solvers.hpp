#pragma once

#include <twlab/problems.hpp>
#include <twlab/treewidth.hpp>

#include <cstddef>
#include <optional>

namespace twlab {

/// Bookkeeping from a DP run, for tests and reports.
struct DpStats {
    std::size_t largest_table = 0;
    std::size_t total_states = 0;
};

/// List coloring by dynamic programming over a nice decomposition of
/// inst.graph; states are list colors on the current bag. Throws InputError
/// when ntd is not a well-formed nice decomposition of the graph.
auto dp_list_coloring(const ListColoringInstance &inst, const NiceTreeDecomposition &ntd, DpStats *stats = nullptr) -> std::optional<Coloring>;

/// Chosen maximum outdegree by dynamic programming; states are the
/// outgoing weight accumulated so far by each bag vertex, never above rho.
auto dp_chosen_outdegree(const ChosenOutdegreeInstance &inst, const NiceTreeDecomposition &ntd, DpStats *stats = nullptr) -> std::optional<Orientation>;

/// dp_chosen_outdegree with rho = r everywhere.
auto min_max_outdegree(const MinMaxOutdegreeInstance &inst, const NiceTreeDecomposition &ntd, DpStats *stats = nullptr) -> std::optional<Orientation>;

/// Minimum max outdegree for a graph whose edges all weigh `c`:
/// c * (least d for which the edge-to-vertex flow network saturates).
auto flow_min_max_uniform(const Graph &g, Weight c) -> Weight;
auto flow_min_max_uniform(const Graph &g, const EdgeWeighting &w) -> Weight;

/// Can every edge be assigned to one endpoint so that no vertex gets more
/// than `d` edges? Decided by max flow.
auto flow_orientable(const Graph &g, int d) -> bool;

} // namespace twlab
