#include <twlab/json_io.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using std::string;
using std::to_string;
using std::vector;

namespace twlab {

namespace {
    auto field(const Json &j, const char *name) -> const Json &
    {
        if (! j.is_object())
            throw InputError(string("expected a JSON object holding \"") + name + "\"");
        auto it = j.find(name);
        if (it == j.end())
            throw InputError(string("missing field \"") + name + "\"");
        return *it;
    }

    template <typename T>
    auto get(const Json &j, const char *name) -> T
    {
        try {
            return field(j, name).get<T>();
        }
        catch (const nlohmann::json::exception &) {
            throw InputError(string("field \"") + name + "\" has the wrong type");
        }
    }

    template <typename T>
    auto as(const Json &j, const char *what) -> T
    {
        try {
            return j.get<T>();
        }
        catch (const nlohmann::json::exception &) {
            throw InputError(string(what) + " has the wrong type");
        }
    }

    auto edges_json(const Graph &g) -> Json
    {
        auto edges = Json::array();
        for (auto &e : g.edges())
            edges.push_back({e.u, e.v});
        return edges;
    }

    auto coloring_pairs(const vector<int> &precolor) -> Json
    {
        auto out = Json::array();
        for (std::size_t v = 0; v < precolor.size(); ++v)
            if (precolor[v] != 0)
                out.push_back({static_cast<int>(v), precolor[v]});
        return out;
    }

    auto require_weights(const GraphDocument &doc, const char *type) -> EdgeWeighting
    {
        if (! doc.weights)
            throw InputError(string(type) + " instance needs \"weights\" on its graph");
        return *doc.weights;
    }
}

auto instance_type(const AnyInstance &inst) -> string
{
    static const char *names[] = {"list_coloring", "precoloring", "equitable", "general_factor", "gensat", "chosen_outdegree", "minmax_outdegree"};
    return names[inst.index()];
}

auto to_json(const Graph &g, const EdgeWeighting *w, const vector<VertexSet> *parts) -> Json
{
    Json j;
    j["n"] = g.vertex_count();
    j["edges"] = edges_json(g);
    if (w)
        j["weights"] = w->weights();
    if (parts)
        j["parts"] = *parts;
    return j;
}

auto to_json(const PartitionedGraph &pg) -> Json
{
    return to_json(pg.graph(), nullptr, &pg.parts());
}

auto to_json(const TreeDecomposition &td) -> Json
{
    return {{"nodes", td.tree.vertex_count()}, {"tree_edges", edges_json(td.tree)}, {"bags", td.bags}};
}

auto to_json(const Orientation &lam) -> Json
{
    auto arcs = Json::array();
    for (auto &[t, h] : lam.arcs())
        arcs.push_back({t, h});
    return arcs;
}

auto to_json(const AnyInstance &inst) -> Json
{
    Json j;
    j["type"] = instance_type(inst);
    std::visit(
        [&](auto &x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ListColoringInstance>) {
                j["graph"] = to_json(x.graph);
                j["lists"] = x.lists;
            }
            else if constexpr (std::is_same_v<T, PrecoloringExtensionInstance>) {
                j["graph"] = to_json(x.graph);
                j["precolor"] = coloring_pairs(x.precolor);
                j["r"] = x.r;
            }
            else if constexpr (std::is_same_v<T, EquitableColoringInstance>) {
                j["graph"] = to_json(x.graph);
                j["r"] = x.r;
            }
            else if constexpr (std::is_same_v<T, GeneralFactorInstance>) {
                j["graph"] = to_json(x.graph);
                j["cardinality_sets"] = x.cardinality_sets;
            }
            else if constexpr (std::is_same_v<T, GensatInstance>) {
                j["variables"] = x.variable_count;
                auto rels = Json::array();
                for (auto &r : x.relations)
                    rels.push_back({{"arity", r.arity}, {"tuples", r.tuples}});
                j["relations"] = rels;
                auto cons = Json::array();
                for (auto &c : x.constraints)
                    cons.push_back({{"scope", c.scope}, {"relation", c.relation}});
                j["constraints"] = cons;
            }
            else if constexpr (std::is_same_v<T, ChosenOutdegreeInstance>) {
                j["graph"] = to_json(x.graph, &x.weights);
                j["rho"] = x.rho;
            }
            else {
                j["graph"] = to_json(x.graph, &x.weights);
                j["r"] = x.r;
            }
        },
        inst);
    return j;
}

auto to_json(const vector<Role> &index) -> Json
{
    auto out = Json::array();
    for (auto &role : index) {
        Json r;
        r["tag"] = role.tag;
        for (auto &[name, value] : role.coords)
            r[name] = value;
        r["vertex"] = role.vertex;
        out.push_back(std::move(r));
    }
    return out;
}

auto to_json(const GensatReduction &out) -> Json
{
    auto j = to_json(static_cast<const ReductionOutput<GensatInstance> &>(out));
    j["dual"] = {{"graph", to_json(out.dual)}, {"witness", to_json(out.dual_witness)}, {"claimed_width_bound", out.dual_bound}};
    j["incidence"] = {{"graph", to_json(out.incidence)}, {"witness", to_json(out.incidence_witness)}, {"claimed_width_bound", out.incidence_bound}};
    return j;
}

auto to_json(const ChosenGadget &out) -> Json
{
    auto j = to_json(static_cast<const ReductionOutput<ChosenOutdegreeInstance> &>(out));
    j["parameters"] = {{"k", out.params.k}, {"n", out.params.n}, {"N", out.params.big_n}, {"M", out.params.big_m}};
    j["source"] = to_json(out.source);
    j["canonical_infeasible"] = out.canonical_infeasible;
    return j;
}

auto graph_from_json(const Json &j) -> GraphDocument
{
    auto n = get<int>(j, "n");
    if (n < 0)
        throw InputError("negative vertex count");
    auto raw = get<vector<vector<int>>>(j, "edges");
    vector<std::pair<Edge, Weight>> tagged;
    vector<Weight> weights;
    bool weighted = j.contains("weights");
    if (weighted) {
        weights = get<vector<Weight>>(j, "weights");
        if (weights.size() != raw.size())
            throw InputError("\"weights\" has " + to_string(weights.size()) + " entries for " + to_string(raw.size()) + " edges");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].size() != 2)
            throw InputError("edge " + to_string(i) + " is not a pair");
        if (raw[i][0] == raw[i][1])
            throw InputError("edge " + to_string(i) + " is a loop at vertex " + to_string(raw[i][0]));
        tagged.push_back({make_edge(raw[i][0], raw[i][1]), weighted ? weights[i] : 1});
    }
    std::sort(tagged.begin(), tagged.end());
    vector<Edge> edges;
    vector<Weight> sorted_weights;
    for (auto &[e, w] : tagged) {
        edges.push_back(e);
        sorted_weights.push_back(w);
    }

    GraphDocument doc;
    doc.graph = Graph(n, std::move(edges));
    if (weighted)
        doc.weights = EdgeWeighting(doc.graph, std::move(sorted_weights));
    if (j.contains("parts"))
        doc.parts = get<vector<VertexSet>>(j, "parts");
    return doc;
}

auto partitioned_from_json(const Json &j) -> PartitionedGraph
{
    auto doc = graph_from_json(j);
    if (! doc.parts)
        throw InputError("graph has no \"parts\"");
    return PartitionedGraph(doc.graph, *doc.parts);
}

auto decomposition_from_json(const Json &j) -> TreeDecomposition
{
    auto nodes = get<int>(j, "nodes");
    auto raw = get<vector<vector<int>>>(j, "tree_edges");
    vector<Edge> edges;
    for (auto &e : raw) {
        if (e.size() != 2 || e[0] == e[1])
            throw InputError("malformed tree edge");
        edges.push_back(make_edge(e[0], e[1]));
    }
    std::sort(edges.begin(), edges.end());
    auto bags = get<vector<VertexSet>>(j, "bags");
    if (static_cast<int>(bags.size()) != nodes)
        throw InputError("decomposition lists " + to_string(bags.size()) + " bags for " + to_string(nodes) + " nodes");
    for (auto &bag : bags)
        std::sort(bag.begin(), bag.end());
    return {Graph(nodes, std::move(edges)), std::move(bags)};
}

auto orientation_from_json(const Json &j, const Graph &g) -> Orientation
{
    auto raw = as<vector<std::pair<Vertex, Vertex>>>(j, "orientation");
    if (static_cast<int>(raw.size()) != g.edge_count())
        throw InputError("orientation has " + to_string(raw.size()) + " arcs for " + to_string(g.edge_count()) + " edges");
    vector<std::pair<Vertex, Vertex>> arcs(raw.size());
    for (auto &[t, h] : raw) {
        auto e = g.edge_index(t, h);
        if (! e)
            throw InputError("arc " + to_string(t) + "->" + to_string(h) + " is not an edge");
        arcs[*e] = {t, h};
    }
    return Orientation(g, std::move(arcs));
}

auto instance_from_json(const Json &j) -> AnyInstance
{
    auto type = get<string>(j, "type");
    if (type == "gensat") {
        GensatInstance inst;
        inst.variable_count = get<int>(j, "variables");
        for (auto &r : field(j, "relations"))
            inst.relations.push_back({get<int>(r, "arity"), get<vector<vector<std::uint8_t>>>(r, "tuples")});
        for (auto &c : field(j, "constraints"))
            inst.constraints.push_back({get<vector<int>>(c, "scope"), get<int>(c, "relation")});
        inst.validate();
        return inst;
    }

    auto doc = graph_from_json(field(j, "graph"));
    auto n = doc.graph.vertex_count();
    if (type == "list_coloring") {
        ListColoringInstance inst{doc.graph, get<vector<vector<int>>>(j, "lists")};
        inst.validate();
        return inst;
    }
    if (type == "precoloring") {
        PrecoloringExtensionInstance inst{doc.graph, vector<int>(static_cast<std::size_t>(n), 0), get<int>(j, "r")};
        for (auto &pair : get<vector<vector<int>>>(j, "precolor")) {
            if (pair.size() != 2 || ! doc.graph.contains(pair[0]))
                throw InputError("malformed precolor entry");
            inst.precolor[pair[0]] = pair[1];
        }
        inst.validate();
        return inst;
    }
    if (type == "equitable") {
        EquitableColoringInstance inst{doc.graph, get<int>(j, "r")};
        inst.validate();
        return inst;
    }
    if (type == "general_factor") {
        GeneralFactorInstance inst{doc.graph, get<vector<vector<int>>>(j, "cardinality_sets")};
        inst.validate();
        return inst;
    }
    if (type == "chosen_outdegree") {
        ChosenOutdegreeInstance inst{doc.graph, require_weights(doc, "chosen_outdegree"), get<vector<Weight>>(j, "rho")};
        inst.validate();
        return inst;
    }
    if (type == "minmax_outdegree") {
        MinMaxOutdegreeInstance inst{doc.graph, require_weights(doc, "minmax_outdegree"), get<Weight>(j, "r")};
        inst.validate();
        return inst;
    }
    throw InputError("unknown instance type \"" + type + "\"");
}

auto index_from_json(const Json &j) -> vector<Role>
{
    vector<Role> out;
    if (! j.is_array())
        throw InputError("index is not an array");
    for (auto &entry : j) {
        Role role{get<string>(entry, "tag"), {}, get<int>(entry, "vertex")};
        for (auto &[key, value] : entry.items())
            if (key != "tag" && key != "vertex")
                role.coords.emplace_back(key, as<int>(value, "index coordinate"));
        out.push_back(std::move(role));
    }
    return out;
}

auto read_json_file(const string &path) -> Json
{
    std::ifstream in(path);
    if (! in)
        throw InputError("cannot open " + path);
    try {
        return Json::parse(in);
    }
    catch (const nlohmann::json::parse_error &e) {
        throw InputError(path + ": malformed JSON at byte " + to_string(e.byte));
    }
}

void write_file_atomic(const string &path, const string &content)
{
    namespace fs = std::filesystem;
    auto target = fs::path(path);
    auto temp = target;
    temp += ".tmp." + to_string(::getpid());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (! out)
            throw std::runtime_error("cannot write " + temp.string());
        out << content;
        out.flush();
        if (! out)
            throw std::runtime_error("short write to " + temp.string());
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

} // namespace twlab
