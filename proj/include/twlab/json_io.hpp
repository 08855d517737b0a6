#pragma once

#include <twlab/graph.hpp>
#include <twlab/problems.hpp>
#include <twlab/reductions.hpp>
#include <twlab/treewidth.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace twlab {

using Json = nlohmann::json;

/// A graph file: the graph plus whichever companions it carries.
struct GraphDocument {
    Graph graph;
    std::optional<EdgeWeighting> weights;
    std::optional<std::vector<VertexSet>> parts;
};

using AnyInstance = std::variant<ListColoringInstance, PrecoloringExtensionInstance, EquitableColoringInstance,
                                 GeneralFactorInstance, GensatInstance, ChosenOutdegreeInstance, MinMaxOutdegreeInstance>;

/// The "type" discriminator used in instance files.
auto instance_type(const AnyInstance &inst) -> std::string;

auto to_json(const Graph &g, const EdgeWeighting *w = nullptr, const std::vector<VertexSet> *parts = nullptr) -> Json;
auto to_json(const PartitionedGraph &pg) -> Json;
auto to_json(const TreeDecomposition &td) -> Json;
auto to_json(const Orientation &lam) -> Json;
auto to_json(const AnyInstance &inst) -> Json;
auto to_json(const std::vector<Role> &index) -> Json;

template <typename Instance>
auto to_json(const ReductionOutput<Instance> &out) -> Json
{
    Json j;
    j["instance"] = to_json(AnyInstance{out.instance});
    j["witness"] = to_json(out.witness);
    j["claimed_width_bound"] = out.claimed_width_bound;
    j["index"] = to_json(out.index);
    if (! out.note.empty())
        j["note"] = out.note;
    return j;
}
auto to_json(const GensatReduction &out) -> Json;
/// Also records the gadget parameters and the source partitioned graph.
auto to_json(const ChosenGadget &out) -> Json;

// Parsers throw InputError with a one-line reason on malformed input.

auto graph_from_json(const Json &j) -> GraphDocument;
auto partitioned_from_json(const Json &j) -> PartitionedGraph;
auto decomposition_from_json(const Json &j) -> TreeDecomposition;
auto orientation_from_json(const Json &j, const Graph &g) -> Orientation;
auto instance_from_json(const Json &j) -> AnyInstance;
auto index_from_json(const Json &j) -> std::vector<Role>;

auto read_json_file(const std::string &path) -> Json;
/// Writes via a temporary file in the same directory and a rename.
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace twlab
