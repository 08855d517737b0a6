#include <twlab/reductions.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>

using std::map;
using std::pair;
using std::string;
using std::to_string;
using std::vector;

namespace twlab {

namespace {
    auto choose2(int k) -> int { return k * (k - 1) / 2; }

    void require(bool condition, const string &what)
    {
        if (! condition)
            throw std::logic_error("gadget check failed: " + what);
    }

    auto sorted_parts(const PartitionedGraph &pg) -> vector<VertexSet>
    {
        auto parts = pg.parts();
        for (auto &p : parts)
            std::sort(p.begin(), p.end());
        return parts;
    }

    /// Graph plus weights from an edge -> weight map.
    auto weighted_graph(int n, const map<Edge, Weight> &weighted) -> pair<Graph, EdgeWeighting>
    {
        vector<Edge> edges;
        vector<Weight> weights;
        for (auto &[e, w] : weighted) {
            edges.push_back(e);
            weights.push_back(w);
        }
        Graph g(n, std::move(edges));
        return {g, EdgeWeighting(g, std::move(weights))};
    }
}

auto pc_to_list_coloring(const PartitionedGraph &pg) -> ReductionOutput<ListColoringInstance>
{
    auto &g = pg.graph();
    auto k = pg.part_count();
    auto parts = sorted_parts(pg);

    ReductionOutput<ListColoringInstance> out;
    vector<vector<int>> lists;
    vector<Edge> edges;
    for (int i = 0; i < k; ++i) {
        vector<int> list;
        for (auto v : parts[i])
            list.push_back(v + 1);
        lists.push_back(std::move(list));
        out.index.push_back({"v", {{"i", i + 1}}, i});
    }
    int next = k;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            for (auto u : parts[i])
                for (auto v : parts[j]) {
                    if (g.has_edge(u, v))
                        continue;
                    auto pad = next++;
                    edges.push_back({i, pad});
                    edges.push_back({j, pad});
                    lists.push_back({u + 1, v + 1});
                    out.index.push_back({"pad", {{"u", u}, {"v", v}}, pad});
                }
    out.instance = {Graph(next, std::move(edges)), std::move(lists)};

    // star: the representatives' bag in the middle, one leaf bag per pad
    VertexSet centre;
    for (int i = 0; i < k; ++i)
        centre.push_back(i);
    vector<VertexSet> bags{centre};
    vector<Edge> tree_edges;
    for (int pad = k; pad < next; ++pad) {
        auto bag = centre;
        bag.push_back(pad);
        tree_edges.push_back({0, static_cast<int>(bags.size())});
        bags.push_back(std::move(bag));
    }
    out.witness = {Graph(static_cast<int>(bags.size()), std::move(tree_edges)), std::move(bags)};
    out.claimed_width_bound = k + 1;
    return out;
}

auto canonical_infeasible_precoloring() -> PrecoloringExtensionInstance
{
    return {Graph(2, {{0, 1}}), {1, 0}, 1};
}

auto lc_to_precoloring(const ListColoringInstance &inst) -> ReductionOutput<PrecoloringExtensionInstance>
{
    inst.validate();
    auto &g = inst.graph;
    auto n = g.vertex_count();
    ReductionOutput<PrecoloringExtensionInstance> out;

    vector<int> universe;
    for (auto &l : inst.lists)
        universe.insert(universe.end(), l.begin(), l.end());
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    if (universe.empty()) {
        if (n == 0) {
            out.instance = {Graph(0), {}, 1};
            out.witness = {Graph(1), {{}}};
            out.note = "empty graph: trivially extendable";
        }
        else {
            out.instance = canonical_infeasible_precoloring();
            out.witness = {Graph(1), {{0, 1}}};
            out.note = "every list is empty: canonical infeasible instance";
        }
        out.claimed_width_bound = std::max(width(out.witness), 1);
        return out;
    }

    auto rank = [&](int color) {
        return static_cast<int>(std::lower_bound(universe.begin(), universe.end(), color) - universe.begin()) + 1;
    };
    vector<Edge> edges = g.edges();
    vector<int> precolor(static_cast<std::size_t>(n), 0);
    vector<pair<VertexSet, Vertex>> leaves;
    int next = n;
    for (Vertex v = 0; v < n; ++v) {
        auto &l = inst.lists[v];
        for (auto c : universe) {
            if (std::find(l.begin(), l.end(), c) != l.end())
                continue;
            auto p = next++;
            edges.push_back({v, p});
            precolor.push_back(rank(c));
            leaves.push_back({{v, p}, v});
            out.index.push_back({"pendant", {{"v", v}, {"color", c}}, p});
        }
    }
    out.instance = {Graph(next, std::move(edges)), std::move(precolor), static_cast<int>(universe.size())};

    out.witness = heuristic_decomposition(g, HeuristicMethod::MinFill);
    auto base_width = width(out.witness);
    attach_bags(out.witness, leaves);
    out.claimed_width_bound = leaves.empty() ? base_width : std::max(base_width, 1);
    return out;
}

auto clique_to_gensat(const Graph &g, int k) -> GensatReduction
{
    auto n = g.vertex_count();
    if (k < 2)
        throw InputError("clique reduction needs k >= 2, got " + to_string(k));
    if (n < 1)
        throw InputError("clique reduction needs a nonempty graph");

    GensatReduction out;
    BooleanRelation relation{2 * n, {}};
    for (auto &e : g.edges()) {
        vector<std::uint8_t> t(static_cast<std::size_t>(2 * n), 0);
        t[e.u] = 1;
        t[n + e.v] = 1;
        relation.tuples.push_back(std::move(t));
    }
    auto var = [&](int i, int l) { return (i - 1) * n + (l - 1); };

    GensatInstance inst;
    inst.variable_count = k * n;
    inst.relations.push_back(std::move(relation));
    for (int i = 1; i <= k; ++i)
        for (int l = 1; l <= n; ++l)
            out.index.push_back({"x", {{"i", i}, {"l", l}}, var(i, l)});
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            GensatConstraint c;
            for (int l = 1; l <= n; ++l)
                c.scope.push_back(var(i, l));
            for (int l = 1; l <= n; ++l)
                c.scope.push_back(var(j, l));
            out.index.push_back({"C", {{"i", i}, {"j", j}}, inst.variable_count + static_cast<int>(inst.constraints.size())});
            inst.constraints.push_back(std::move(c));
        }
    if (g.edge_count() == 0)
        out.note = "edgeless graph: relation is empty, instance unsatisfiable";

    auto m = static_cast<int>(inst.constraints.size());
    out.dual = build_dual(inst);
    VertexSet all_constraints;
    for (int j = 0; j < m; ++j)
        all_constraints.push_back(j);
    out.dual_witness = {Graph(1), {all_constraints}};
    out.dual_bound = choose2(k) - 1;

    out.incidence = build_incidence(inst);
    VertexSet constraint_side;
    for (int j = 0; j < m; ++j)
        constraint_side.push_back(inst.variable_count + j);
    auto variables_only = remove_vertices(out.incidence, constraint_side);
    out.incidence_witness = augment_with_set(out.incidence, decompose_forest(variables_only.graph), constraint_side);
    out.incidence_bound = choose2(k);

    out.instance = std::move(inst);
    out.witness = out.incidence_witness;
    out.claimed_width_bound = out.incidence_bound;
    return out;
}

GadgetIndex::GadgetIndex(int k, int n) :
    k_(k),
    n_(n)
{
    for (int i = 1; i <= k; ++i)
        a_.push_back(add({"a", {{"i", i}}, -1}));
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= n; ++j) {
            auto u = add({"u", {{"i", i}, {"j", j}}, -1});
            auto x = add({"x", {{"i", i}, {"j", j}}, -1});
            auto y = add({"y", {{"i", i}, {"j", j}}, -1});
            uxy_.push_back({u, x, y});
        }
}

auto GadgetIndex::add(Role role) -> Vertex
{
    role.vertex = static_cast<Vertex>(roles_.size());
    roles_.push_back(std::move(role));
    return roles_.back().vertex;
}

void GadgetIndex::add_pair(int i, int ip, vector<pair<int, int>> cross)
{
    auto b = add({"b", {{"i", i}, {"ip", ip}}, -1});
    auto c = add({"c", {{"i", i}, {"ip", ip}}, -1});
    auto d = add({"d", {{"i", i}, {"ip", ip}}, -1});
    bcd_[{i, ip}] = {b, c, d};
    for (auto [q, qp] : cross)
        e_[{i, ip, q, qp}] = add({"e", {{"i", i}, {"ip", ip}, {"q", q}, {"qp", qp}}, -1});
    cross_[{i, ip}] = std::move(cross);
}

auto GadgetIndex::e(int i, int ip, int q, int qp) const -> std::optional<Vertex>
{
    auto it = e_.find({i, ip, q, qp});
    if (it == e_.end())
        return std::nullopt;
    return it->second;
}

auto canonical_infeasible_chosen() -> ChosenOutdegreeInstance
{
    Graph g(2, {{0, 1}});
    return {g, EdgeWeighting(g, {1}), {0, 0}};
}

auto pc_to_chosen_outdegree(const PartitionedGraph &pg) -> ChosenGadget
{
    auto k = pg.part_count();
    auto n = pg.part_size();
    auto parts = sorted_parts(pg);
    auto &g = pg.graph();

    ChosenGadget out;
    out.source = pg;
    auto big_n = static_cast<Weight>(n) + 1;
    auto n3 = big_n * big_n * big_n;
    auto big_m = static_cast<Weight>(k) * (n3 + big_n * big_n);
    out.params = {k, n, big_n, big_m};
    out.claimed_width_bound = 2 * choose2(k) + 1;

    map<pair<int, int>, vector<pair<int, int>>> cross;
    for (int i = 1; i <= k; ++i)
        for (int ip = i + 1; ip <= k; ++ip) {
            auto &pairs = cross[{i, ip}];
            for (int q = 1; q <= n; ++q)
                for (int qp = 1; qp <= n; ++qp)
                    if (g.has_edge(parts[i - 1][q - 1], parts[ip - 1][qp - 1]))
                        pairs.emplace_back(q, qp);
            if (pairs.empty()) {
                out.instance = canonical_infeasible_chosen();
                out.witness = {Graph(1), {{0, 1}}};
                out.canonical_infeasible = true;
                out.note = "E_{" + to_string(i) + "," + to_string(ip) + "} is empty: no transversal clique, canonical infeasible instance emitted";
                return out;
            }
        }

    GadgetIndex idx(k, n);
    for (auto &[key, pairs] : cross)
        idx.add_pair(key.first, key.second, pairs);

    map<Edge, Weight> w;
    vector<Weight> rho(static_cast<std::size_t>(idx.vertex_count()), 0);
    auto set_weight = [&](Vertex a, Vertex b, Weight value) { w[make_edge(a, b)] = value; };
    auto weight = [&](Vertex a, Vertex b) { return w.at(make_edge(a, b)); };

    for (int i = 1; i <= k; ++i) {
        rho[idx.a(i)] = 1;
        for (int j = 1; j <= n; ++j) {
            set_weight(idx.a(i), idx.u(i, j), 1);
            set_weight(idx.u(i, j), idx.x(i, j), big_m);
            set_weight(idx.u(i, j), idx.y(i, j), big_m + 1);
            rho[idx.u(i, j)] = big_m + 1;
            rho[idx.x(i, j)] = big_m;
            rho[idx.y(i, j)] = big_m + 1;
        }
    }

    Weight cross_total = 0;
    for (auto &[key, pairs] : cross) {
        auto [i, ip] = key;
        auto b = idx.b(i, ip), c = idx.c(i, ip), d = idx.d(i, ip);
        // special edges; the y-c side carries +1 over the x-b side
        for (int j = 1; j <= n; ++j) {
            set_weight(idx.x(i, j), b, n3 + j);
            set_weight(idx.y(i, j), c, n3 + j + 1);
            set_weight(idx.x(ip, j), b, n3 + j * big_n);
            set_weight(idx.y(ip, j), c, n3 + j * big_n + 1);
        }
        Weight rho_b = 0, rho_c = 0;
        for (int j = 1; j <= n; ++j)
            rho_c += weight(idx.y(i, j), c) + weight(idx.y(ip, j), c);
        for (auto [q, qp] : pairs) {
            auto e = *idx.e(i, ip, q, qp);
            set_weight(d, e, 1);
            auto eb = weight(idx.x(i, q), b) + weight(idx.x(ip, qp), b);
            auto ec = weight(idx.y(i, q), c) + weight(idx.y(ip, qp), c);
            set_weight(e, b, eb);
            set_weight(e, c, ec);
            rho[e] = ec;
            rho_b += eb;
        }
        rho[b] = rho_b;
        rho[c] = rho_c;
        rho[d] = static_cast<Weight>(pairs.size()) - 1;
        cross_total += static_cast<Weight>(pairs.size());
    }

    auto [h, weights] = weighted_graph(idx.vertex_count(), w);
    out.instance = {std::move(h), std::move(weights), std::move(rho)};
    out.gadget = std::move(idx);
    out.index = out.gadget.roles();

    auto &hg = out.instance.graph;
    auto pairs = static_cast<Weight>(choose2(k));
    require(hg.vertex_count() == k * (3 * n + 1) + 3 * pairs + cross_total, "vertex count formula");
    require(hg.edge_count() == 3 * k * n + 3 * cross_total + 4 * n * pairs, "edge count formula");

    auto &gi = out.gadget;
    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= n; ++j) {
            auto mx = special_weight_sum(out, gi.x(i, j)), my = special_weight_sum(out, gi.y(i, j));
            require(mx < my && my < big_m, "M(x) < M(y) < M");
        }
    for (auto &[key, pairs_ip] : cross) {
        auto [i, ip] = key;
        auto b = gi.b(i, ip), c = gi.c(i, ip);
        require(out.instance.rho[c] / n3 == 2 * n, "floor(rho(c) / N^3) = 2n");
        for (auto v : {b, c})
            for (auto nb : hg.neighbors(v)) {
                auto tag = gi.role_of(nb).tag;
                if (tag == "x" || tag == "y")
                    require(weight(v, nb) > n3, "special edge weight > N^3");
            }
        for (auto [q, qp] : pairs_ip) {
            auto e = *gi.e(i, ip, q, qp);
            auto eb = weight(e, b), ec = weight(e, c);
            require(ec > 2 * n3, "w(e, c) > 2 N^3");
            require(ec == eb + 2, "w(e, c) = w(e, b) + 2");
            require(out.instance.rho[e] - eb >= 2, "rho(e) - w(e, b) >= 2");
        }
    }

    auto bc = VertexSet{};
    for (auto &[key, _] : cross) {
        bc.push_back(gi.b(key.first, key.second));
        bc.push_back(gi.c(key.first, key.second));
    }
    auto rest = remove_vertices(hg, bc);
    out.witness = augment_with_set(hg, decompose_forest(rest.graph), bc);
    return out;
}

auto special_weight_sum(const ChosenGadget &gadget, Vertex v) -> Weight
{
    auto &g = gadget.instance.graph;
    auto &gi = gadget.gadget;
    auto tag = gi.role_of(v).tag;
    Weight sum = 0;
    auto &nb = g.neighbors(v);
    auto &inc = g.incident_edges(v);
    for (std::size_t p = 0; p < nb.size(); ++p) {
        auto other = gi.role_of(nb[p]).tag;
        bool special = ((tag == "x" || tag == "y") && (other == "b" || other == "c"))
            || ((tag == "b" || tag == "c") && (other == "x" || other == "y"));
        if (special)
            sum += gadget.instance.weights.weight(inc[p]);
    }
    return sum;
}

auto extract_clique(const ChosenGadget &gadget, const Orientation &lam) -> VertexSet
{
    auto &inst = gadget.instance;
    if (lam.size() != inst.graph.edge_count() || ! is_admissible(inst.graph, inst.weights, inst.rho, lam))
        throw InputError("orientation is not rho-admissible for the gadget");
    if (gadget.canonical_infeasible)
        throw std::logic_error("canonical infeasible gadget has an admissible orientation");

    auto &gi = gadget.gadget;
    auto parts = sorted_parts(gadget.source);
    VertexSet clique;
    for (int i = 1; i <= gi.k(); ++i) {
        int p = 1;
        for (int j = 1; j <= gi.n(); ++j) {
            auto e = *inst.graph.edge_index(gi.a(i), gi.u(i, j));
            if (lam.tail(e) == gi.a(i)) {
                p = j;
                break;
            }
        }
        clique.push_back(parts[i - 1][p - 1]);
    }
    if (! is_clique(gadget.source.graph(), clique))
        throw std::logic_error("admissible orientation did not yield a clique");
    return clique;
}

auto clique_orientation(const ChosenGadget &gadget, const VertexSet &clique) -> Orientation
{
    auto &g = gadget.instance.graph;
    auto &gi = gadget.gadget;
    auto k = gi.k(), n = gi.n();
    if (gadget.canonical_infeasible || static_cast<int>(clique.size()) != k || ! is_clique(gadget.source.graph(), clique))
        throw InputError("not a transversal clique of the source graph");

    auto parts = sorted_parts(gadget.source);
    vector<int> p(static_cast<std::size_t>(k) + 1, 0);
    for (int i = 1; i <= k; ++i) {
        auto &part = parts[i - 1];
        auto it = std::find(part.begin(), part.end(), clique[i - 1]);
        if (it == part.end())
            throw InputError("clique vertex " + to_string(clique[i - 1]) + " is not in part " + to_string(i));
        p[i] = static_cast<int>(it - part.begin()) + 1;
    }

    vector<pair<Vertex, Vertex>> arcs(static_cast<std::size_t>(g.edge_count()), {-1, -1});
    auto direct = [&](Vertex tail, Vertex head) {
        auto e = g.edge_index(tail, head);
        if (! e)
            throw std::logic_error("gadget edge missing");
        arcs[*e] = {tail, head};
    };

    for (int i = 1; i <= k; ++i)
        for (int j = 1; j <= n; ++j) {
            bool selected = j == p[i];
            auto a = gi.a(i), u = gi.u(i, j), x = gi.x(i, j), y = gi.y(i, j);
            selected ? direct(a, u) : direct(u, a);
            selected ? direct(u, y) : direct(y, u);
            selected ? direct(x, u) : direct(u, x);
            for (int other = 1; other <= k; ++other) {
                if (other == i)
                    continue;
                auto lo = std::min(i, other), hi = std::max(i, other);
                auto b = gi.b(lo, hi), c = gi.c(lo, hi);
                selected ? direct(y, c) : direct(c, y);
                selected ? direct(b, x) : direct(x, b);
            }
        }
    for (int i = 1; i <= k; ++i)
        for (int ip = i + 1; ip <= k; ++ip) {
            auto b = gi.b(i, ip), c = gi.c(i, ip), d = gi.d(i, ip);
            for (auto [q, qp] : gi.cross_pairs(i, ip)) {
                auto e = *gi.e(i, ip, q, qp);
                if (q == p[i] && qp == p[ip]) {
                    direct(e, d);
                    direct(e, b);
                    direct(c, e);
                }
                else {
                    direct(d, e);
                    direct(b, e);
                    direct(e, c);
                }
            }
        }
    return Orientation(g, std::move(arcs));
}

auto chosen_to_minmax(const ChosenOutdegreeInstance &inst) -> ReductionOutput<MinMaxOutdegreeInstance>
{
    inst.validate();
    auto &g = inst.graph;
    auto n = g.vertex_count();
    if (n == 0)
        throw InputError("chosen-to-minmax needs at least one vertex");
    auto r = *std::max_element(inst.rho.begin(), inst.rho.end());

    ReductionOutput<MinMaxOutdegreeInstance> out;
    if (r == 0) {
        if (g.edge_count() == 0) {
            out.instance = {g, EdgeWeighting(g, {}), 1};
            out.witness = decompose_forest(g);
            out.note = "all rho zero on an edgeless graph: yes, emitted unchanged with r = 1";
        }
        else {
            Graph k2(2, {{0, 1}});
            out.instance = {k2, EdgeWeighting(k2, {2}), 1};
            out.witness = {Graph(1), {{0, 1}}};
            out.note = "all rho zero with an edge present: canonical infeasible instance";
        }
        out.claimed_width_bound = std::max(width(out.witness), 2);
        return out;
    }

    map<Edge, Weight> w;
    for (int e = 0; e < g.edge_count(); ++e)
        w[g.edge(e)] = inst.weights.weight(e);
    vector<pair<VertexSet, Vertex>> leaves;
    int next = n;
    for (Vertex v = 0; v < n; ++v) {
        if (inst.rho[v] >= r)
            continue;
        auto x = next++, y = next++;
        w[make_edge(v, x)] = r - inst.rho[v];
        w[make_edge(v, y)] = r - inst.rho[v];
        w[make_edge(x, y)] = r;
        leaves.push_back({{v, x, y}, v});
        out.index.push_back({"x", {{"v", v}}, x});
        out.index.push_back({"y", {{"v", v}}, y});
    }
    auto [h, weights] = weighted_graph(next, w);
    out.instance = {std::move(h), std::move(weights), r};

    out.witness = heuristic_decomposition(g, HeuristicMethod::MinFill);
    auto base_width = width(out.witness);
    attach_bags(out.witness, leaves);
    out.claimed_width_bound = std::max(base_width, 2);
    return out;
}

} // namespace twlab
