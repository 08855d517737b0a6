#include <twlab/problems.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

using std::optional;
using std::pair;
using std::to_string;
using std::vector;

namespace twlab {

namespace {
    auto sorted_unique(vector<int> s) -> vector<int>
    {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    void require_per_vertex(const Graph &g, std::size_t size, const char *what)
    {
        if (static_cast<int>(size) != g.vertex_count())
            throw InputError(std::string(what) + " has " + to_string(size) + " entries for " + to_string(g.vertex_count()) + " vertices");
    }

    /// Smallest-last order: repeatedly strip a minimum-degree vertex
    /// (lowest index on ties), then reverse.
    auto degeneracy_order(const Graph &g) -> vector<Vertex>
    {
        auto n = g.vertex_count();
        vector<int> deg(static_cast<std::size_t>(n));
        vector<char> removed(static_cast<std::size_t>(n), 0);
        for (Vertex v = 0; v < n; ++v)
            deg[v] = g.degree(v);
        vector<Vertex> order;
        for (int step = 0; step < n; ++step) {
            Vertex best = -1;
            for (Vertex v = 0; v < n; ++v)
                if (! removed[v] && (best == -1 || deg[v] < deg[best]))
                    best = v;
            removed[best] = 1;
            order.push_back(best);
            for (auto u : g.neighbors(best))
                if (! removed[u])
                    --deg[u];
        }
        std::reverse(order.begin(), order.end());
        return order;
    }
}

void ListColoringInstance::validate() const
{
    require_per_vertex(graph, lists.size(), "list assignment");
    for (std::size_t v = 0; v < lists.size(); ++v)
        for (auto c : lists[v])
            if (c < 1)
                throw InputError("vertex " + to_string(v) + " lists non-positive color " + to_string(c));
}

void PrecoloringExtensionInstance::validate() const
{
    if (r < 1)
        throw InputError("precoloring extension needs r >= 1, got " + to_string(r));
    require_per_vertex(graph, precolor.size(), "precoloring");
    for (std::size_t v = 0; v < precolor.size(); ++v)
        if (precolor[v] < 0 || precolor[v] > r)
            throw InputError("vertex " + to_string(v) + " precolored " + to_string(precolor[v]) + " outside 1.." + to_string(r));
    for (auto &e : graph.edges())
        if (precolor[e.u] != 0 && precolor[e.u] == precolor[e.v])
            throw InputError("precoloring is not proper on edge {" + to_string(e.u) + "," + to_string(e.v) + "}");
}

void EquitableColoringInstance::validate() const
{
    if (r < 1)
        throw InputError("equitable coloring needs r >= 1, got " + to_string(r));
}

void GeneralFactorInstance::validate() const
{
    require_per_vertex(graph, cardinality_sets.size(), "cardinality sets");
    for (Vertex v = 0; v < graph.vertex_count(); ++v)
        for (auto k : cardinality_sets[v])
            if (k < 0 || k > graph.degree(v))
                throw InputError("cardinality set of vertex " + to_string(v) + " contains " + to_string(k) + " outside 0.." + to_string(graph.degree(v)));
}

void BooleanRelation::validate() const
{
    if (arity < 1)
        throw InputError("relation arity must be positive, got " + to_string(arity));
    for (auto &t : tuples) {
        if (static_cast<int>(t.size()) != arity)
            throw InputError("relation tuple of length " + to_string(t.size()) + " in a relation of arity " + to_string(arity));
        for (auto b : t)
            if (b > 1)
                throw InputError("relation tuple entry is not 0/1");
    }
    auto sorted = tuples;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("relation has duplicate tuples");
}

auto BooleanRelation::contains(const vector<std::uint8_t> &tuple) const -> bool
{
    return std::find(tuples.begin(), tuples.end(), tuple) != tuples.end();
}

void GensatInstance::validate() const
{
    if (variable_count < 0)
        throw InputError("negative variable count");
    for (auto &r : relations)
        r.validate();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        auto &c = constraints[i];
        if (c.relation < 0 || c.relation >= static_cast<int>(relations.size()))
            throw InputError("constraint " + to_string(i) + " references missing relation " + to_string(c.relation));
        if (static_cast<int>(c.scope.size()) != relations[c.relation].arity)
            throw InputError("constraint " + to_string(i) + " scope length differs from relation arity");
        for (auto x : c.scope)
            if (x < 0 || x >= variable_count)
                throw InputError("constraint " + to_string(i) + " uses unknown variable " + to_string(x));
        if (sorted_unique(c.scope).size() != c.scope.size())
            throw InputError("constraint " + to_string(i) + " repeats a variable in its scope");
    }
}

void ChosenOutdegreeInstance::validate() const
{
    if (weights.size() != graph.edge_count())
        throw InputError("weighting is not a companion of the graph");
    require_per_vertex(graph, rho.size(), "rho");
    for (std::size_t v = 0; v < rho.size(); ++v)
        if (rho[v] < 0)
            throw InputError("rho of vertex " + to_string(v) + " is negative");
}

namespace {
    void check_minmax(const MinMaxOutdegreeInstance &inst, Weight weight_ceiling, Weight least_r)
    {
        if (inst.weights.size() != inst.graph.edge_count())
            throw InputError("weighting is not a companion of the graph");
        if (inst.r < least_r)
            throw InputError("minimum maximum outdegree needs r >= " + to_string(least_r) + ", got " + to_string(inst.r));
        if (inst.weights.total_weight() > weight_ceiling)
            throw InputError("total weight " + to_string(inst.weights.total_weight()) + " exceeds the ceiling " + to_string(weight_ceiling));
    }
}

void MinMaxOutdegreeInstance::validate(Weight weight_ceiling) const
{
    check_minmax(*this, weight_ceiling, 1);
}

void MinMaxOutdegreeInstance::validate_decision(Weight weight_ceiling) const
{
    check_minmax(*this, weight_ceiling, 0);
}

auto is_list_coloring(const ListColoringInstance &inst, const Coloring &c) -> bool
{
    if (static_cast<int>(c.size()) != inst.graph.vertex_count() || inst.lists.size() != c.size())
        return false;
    for (std::size_t v = 0; v < c.size(); ++v)
        if (std::find(inst.lists[v].begin(), inst.lists[v].end(), c[v]) == inst.lists[v].end())
            return false;
    for (auto &e : inst.graph.edges())
        if (c[e.u] == c[e.v])
            return false;
    return true;
}

auto is_precoloring_extension(const PrecoloringExtensionInstance &inst, const Coloring &c) -> bool
{
    if (static_cast<int>(c.size()) != inst.graph.vertex_count())
        return false;
    for (std::size_t v = 0; v < c.size(); ++v) {
        if (c[v] < 1 || c[v] > inst.r)
            return false;
        if (inst.precolor[v] != 0 && inst.precolor[v] != c[v])
            return false;
    }
    for (auto &e : inst.graph.edges())
        if (c[e.u] == c[e.v])
            return false;
    return true;
}

auto is_equitable_coloring(const EquitableColoringInstance &inst, const Coloring &c) -> bool
{
    if (static_cast<int>(c.size()) != inst.graph.vertex_count())
        return false;
    vector<int> size(static_cast<std::size_t>(inst.r) + 1, 0);
    for (auto col : c) {
        if (col < 1 || col > inst.r)
            return false;
        ++size[col];
    }
    for (auto &e : inst.graph.edges())
        if (c[e.u] == c[e.v])
            return false;
    for (int a = 1; a <= inst.r; ++a)
        for (int b = 1; b <= inst.r; ++b)
            if (size[a] - size[b] > 1)
                return false;
    return true;
}

auto is_general_factor(const GeneralFactorInstance &inst, const vector<int> &factor_edges) -> bool
{
    auto &g = inst.graph;
    vector<int> incident(static_cast<std::size_t>(g.vertex_count()), 0);
    auto edges = factor_edges;
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        return false;
    for (auto e : edges) {
        if (e < 0 || e >= g.edge_count())
            return false;
        ++incident[g.edge(e).u];
        ++incident[g.edge(e).v];
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        auto &k = inst.cardinality_sets[v];
        if (std::find(k.begin(), k.end(), incident[v]) == k.end())
            return false;
    }
    return true;
}

auto satisfies(const GensatInstance &inst, const Assignment &tau) -> bool
{
    if (static_cast<int>(tau.size()) != inst.variable_count)
        return false;
    for (auto &c : inst.constraints) {
        vector<std::uint8_t> image;
        for (auto x : c.scope)
            image.push_back(tau[x]);
        if (! inst.relations[c.relation].contains(image))
            return false;
    }
    return true;
}

auto is_admissible(const Graph &g, const EdgeWeighting &w, const vector<Weight> &rho, const Orientation &lam) -> bool
{
    if (static_cast<int>(rho.size()) != g.vertex_count() || lam.size() != g.edge_count())
        return false;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (weighted_outdegree(g, w, lam, v) > rho[v])
            return false;
    return true;
}

auto max_weighted_outdegree(const Graph &g, const EdgeWeighting &w, const Orientation &lam) -> Weight
{
    Weight best = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        best = std::max(best, weighted_outdegree(g, w, lam, v));
    return best;
}

auto bf_list_coloring(const ListColoringInstance &inst) -> optional<Coloring>
{
    inst.validate();
    auto &g = inst.graph;
    for (auto &l : inst.lists)
        if (l.empty())
            return std::nullopt;

    vector<vector<int>> lists;
    for (auto &l : inst.lists)
        lists.push_back(sorted_unique(l));
    auto order = degeneracy_order(g);
    Coloring color(static_cast<std::size_t>(g.vertex_count()), 0);

    std::function<bool(std::size_t)> extend = [&](std::size_t i) {
        if (i == order.size())
            return true;
        auto v = order[i];
        for (auto c : lists[v]) {
            bool clash = false;
            for (auto u : g.neighbors(v))
                if (color[u] == c) {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            color[v] = c;
            if (extend(i + 1))
                return true;
            color[v] = 0;
        }
        return false;
    };
    if (! extend(0))
        return std::nullopt;
    return color;
}

auto bf_precoloring(const PrecoloringExtensionInstance &inst) -> optional<Coloring>
{
    inst.validate();
    auto &g = inst.graph;
    auto n = g.vertex_count();
    Coloring color(inst.precolor.begin(), inst.precolor.end());

    std::function<bool(Vertex)> extend = [&](Vertex v) {
        if (v == n)
            return true;
        if (inst.precolor[v] != 0) {
            for (auto u : g.neighbors(v))
                if (color[u] == color[v])
                    return false;
            return extend(v + 1);
        }
        for (int c = 1; c <= inst.r; ++c) {
            bool clash = false;
            for (auto u : g.neighbors(v))
                if (color[u] == c) {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            color[v] = c;
            if (extend(v + 1))
                return true;
        }
        color[v] = 0;
        return false;
    };
    if (! extend(0))
        return std::nullopt;
    return color;
}

auto bf_equitable(const EquitableColoringInstance &inst) -> optional<Coloring>
{
    inst.validate();
    auto &g = inst.graph;
    auto n = g.vertex_count();
    auto r = inst.r;
    // with all r classes counted, sizes must be floor(n/r) or ceil(n/r)
    int low = n / r, high = (n + r - 1) / r;
    Coloring color(static_cast<std::size_t>(n), 0);
    vector<int> size(static_cast<std::size_t>(r) + 1, 0);

    std::function<bool(Vertex)> extend = [&](Vertex v) {
        int deficit = 0;
        for (int c = 1; c <= r; ++c)
            deficit += std::max(0, low - size[c]);
        if (deficit > n - v)
            return false;
        if (v == n) {
            auto [mn, mx] = std::minmax_element(size.begin() + 1, size.end());
            return *mx - *mn <= 1;
        }
        for (int c = 1; c <= r; ++c) {
            if (size[c] == high)
                continue;
            bool clash = false;
            for (auto u : g.neighbors(v))
                if (color[u] == c) {
                    clash = true;
                    break;
                }
            if (clash)
                continue;
            color[v] = c;
            ++size[c];
            if (extend(v + 1))
                return true;
            --size[c];
            color[v] = 0;
        }
        return false;
    };
    if (! extend(0))
        return std::nullopt;
    return color;
}

auto bf_general_factor(const GeneralFactorInstance &inst) -> optional<vector<int>>
{
    inst.validate();
    auto &g = inst.graph;
    auto n = g.vertex_count();
    vector<vector<int>> allowed;
    for (auto &k : inst.cardinality_sets)
        allowed.push_back(sorted_unique(k));
    vector<int> taken(static_cast<std::size_t>(n), 0), open(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v)
        open[v] = g.degree(v);

    auto feasible = [&](Vertex v) {
        auto &k = allowed[v];
        auto it = std::lower_bound(k.begin(), k.end(), taken[v]);
        return it != k.end() && *it <= taken[v] + open[v];
    };
    for (Vertex v = 0; v < n; ++v)
        if (! feasible(v))
            return std::nullopt;

    vector<int> chosen;
    std::function<bool(int)> extend = [&](int e) {
        if (e == g.edge_count())
            return true;
        auto [u, v] = g.edge(e);
        --open[u];
        --open[v];
        for (int take = 0; take <= 1; ++take) {
            taken[u] += take;
            taken[v] += take;
            if (take)
                chosen.push_back(e);
            if (feasible(u) && feasible(v) && extend(e + 1))
                return true;
            if (take)
                chosen.pop_back();
            taken[u] -= take;
            taken[v] -= take;
        }
        ++open[u];
        ++open[v];
        return false;
    };
    if (! extend(0))
        return std::nullopt;
    return chosen;
}

auto bf_gensat(const GensatInstance &inst) -> optional<Assignment>
{
    inst.validate();
    auto n = inst.variable_count;
    vector<vector<int>> touching(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < inst.constraints.size(); ++i) {
        auto &c = inst.constraints[i];
        if (inst.relations[c.relation].tuples.empty())
            return std::nullopt;
        for (auto x : c.scope)
            touching[x].push_back(static_cast<int>(i));
    }
    Assignment tau(static_cast<std::size_t>(n), 0);
    vector<char> assigned(static_cast<std::size_t>(n), 0);

    auto consistent = [&](const GensatConstraint &c) {
        for (auto &t : inst.relations[c.relation].tuples) {
            bool match = true;
            for (std::size_t p = 0; p < c.scope.size() && match; ++p)
                if (assigned[c.scope[p]] && tau[c.scope[p]] != t[p])
                    match = false;
            if (match)
                return true;
        }
        return false;
    };

    std::function<bool(int)> extend = [&](int x) {
        if (x == n)
            return true;
        assigned[x] = 1;
        for (std::uint8_t value = 0; value <= 1; ++value) {
            tau[x] = value;
            bool ok = true;
            for (auto ci : touching[x])
                if (! consistent(inst.constraints[ci])) {
                    ok = false;
                    break;
                }
            if (ok && extend(x + 1))
                return true;
        }
        tau[x] = 0;
        assigned[x] = 0;
        return false;
    };
    if (! extend(0))
        return std::nullopt;
    return tau;
}

namespace {
    /// Search state for the chosen-outdegree oracle. tail[e] is -1 while
    /// undecided; every commit is logged on the trail so branches can undo.
    class OrientationSearch {
    public:
        explicit OrientationSearch(const ChosenOutdegreeInstance &inst) :
            g_(inst.graph),
            w_(inst.weights),
            residual_(inst.rho),
            tail_(static_cast<std::size_t>(inst.graph.edge_count()), -1)
        {
            for (auto r : residual_)
                residual_sum_ += r;
            undecided_weight_ = w_.total_weight();
        }

        auto solve() -> optional<Orientation>
        {
            vector<Vertex> all(static_cast<std::size_t>(g_.vertex_count()));
            std::iota(all.begin(), all.end(), 0);
            if (! propagate(all) || ! search(0))
                return std::nullopt;
            vector<pair<Vertex, Vertex>> arcs;
            for (int e = 0; e < g_.edge_count(); ++e) {
                auto &edge = g_.edge(e);
                auto t = tail_[e];
                arcs.emplace_back(t, t == edge.u ? edge.v : edge.u);
            }
            return Orientation(g_, std::move(arcs));
        }

    private:
        auto commit(int e, Vertex t) -> bool
        {
            auto w = w_.weight(e);
            if (residual_[t] < w)
                return false;
            tail_[e] = t;
            residual_[t] -= w;
            residual_sum_ -= w;
            undecided_weight_ -= w;
            trail_.push_back(e);
            return true;
        }

        void undo_to(std::size_t mark)
        {
            while (trail_.size() > mark) {
                auto e = trail_.back();
                trail_.pop_back();
                auto w = w_.weight(e);
                residual_[tail_[e]] += w;
                residual_sum_ += w;
                undecided_weight_ += w;
                tail_[e] = -1;
            }
        }

        // An undecided edge heavier than an endpoint's residual must leave
        // the other endpoint; if neither can emit it the branch is dead.
        auto propagate(vector<Vertex> queue) -> bool
        {
            while (! queue.empty()) {
                auto v = queue.back();
                queue.pop_back();
                auto &inc = g_.incident_edges(v);
                auto &nb = g_.neighbors(v);
                for (std::size_t i = 0; i < inc.size(); ++i) {
                    auto e = inc[i];
                    if (tail_[e] != -1 || w_.weight(e) <= residual_[v])
                        continue;
                    auto other = nb[i];
                    if (! commit(e, other))
                        return false;
                    queue.push_back(other);
                }
            }
            return residual_sum_ >= undecided_weight_;
        }

        auto search(int from) -> bool
        {
            while (from < g_.edge_count() && tail_[from] != -1)
                ++from;
            if (from == g_.edge_count())
                return true;
            auto &edge = g_.edge(from);
            for (auto t : {edge.u, edge.v}) {
                auto mark = trail_.size();
                if (commit(from, t) && propagate({t}) && search(from + 1))
                    return true;
                undo_to(mark);
            }
            return false;
        }

        const Graph &g_;
        const EdgeWeighting &w_;
        vector<Weight> residual_;
        vector<Vertex> tail_;
        vector<int> trail_;
        Weight residual_sum_ = 0;
        Weight undecided_weight_ = 0;
    };
}

auto bf_chosen_outdegree(const ChosenOutdegreeInstance &inst) -> optional<Orientation>
{
    inst.validate();
    return OrientationSearch(inst).solve();
}

auto bf_min_max_outdegree(const MinMaxOutdegreeInstance &inst) -> optional<Orientation>
{
    inst.validate_decision();
    ChosenOutdegreeInstance chosen{inst.graph, inst.weights, vector<Weight>(static_cast<std::size_t>(inst.graph.vertex_count()), inst.r)};
    return bf_chosen_outdegree(chosen);
}

auto bf_min_max_value(const Graph &g, const EdgeWeighting &w) -> Weight
{
    auto feasible = [&](Weight r) {
        ChosenOutdegreeInstance chosen{g, w, vector<Weight>(static_cast<std::size_t>(g.vertex_count()), r)};
        return bf_chosen_outdegree(chosen).has_value();
    };
    Weight lo = 0, hi = w.total_weight();
    while (lo < hi) {
        auto mid = lo + (hi - lo) / 2;
        if (feasible(mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

auto bf_partitioned_clique(const PartitionedGraph &pg) -> optional<VertexSet>
{
    auto &g = pg.graph();
    auto k = pg.part_count();
    VertexSet chosen;
    std::function<bool(int)> extend = [&](int i) {
        if (i == k)
            return true;
        auto part = pg.parts()[i];
        std::sort(part.begin(), part.end());
        for (auto v : part) {
            bool adjacent = std::all_of(chosen.begin(), chosen.end(), [&](Vertex u) { return g.has_edge(u, v); });
            if (! adjacent)
                continue;
            chosen.push_back(v);
            if (extend(i + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (! extend(0))
        return std::nullopt;
    return chosen;
}

auto bf_clique(const Graph &g, int k) -> optional<VertexSet>
{
    VertexSet chosen;
    std::function<bool(Vertex)> extend = [&](Vertex from) {
        if (static_cast<int>(chosen.size()) == k)
            return true;
        for (auto v = from; v < g.vertex_count(); ++v) {
            if (! std::all_of(chosen.begin(), chosen.end(), [&](Vertex u) { return g.has_edge(u, v); }))
                continue;
            chosen.push_back(v);
            if (extend(v + 1))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (k < 0 || ! extend(0))
        return std::nullopt;
    return chosen;
}

auto build_primal(const GensatInstance &inst) -> Graph
{
    std::set<Edge> edges;
    for (auto &c : inst.constraints)
        for (std::size_t a = 0; a < c.scope.size(); ++a)
            for (std::size_t b = a + 1; b < c.scope.size(); ++b)
                edges.insert(make_edge(c.scope[a], c.scope[b]));
    return Graph(inst.variable_count, {edges.begin(), edges.end()});
}

auto build_dual(const GensatInstance &inst) -> Graph
{
    auto m = static_cast<int>(inst.constraints.size());
    vector<vector<int>> scopes;
    for (auto &c : inst.constraints)
        scopes.push_back(sorted_unique(c.scope));
    vector<Edge> edges;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            vector<int> common;
            std::set_intersection(scopes[a].begin(), scopes[a].end(), scopes[b].begin(), scopes[b].end(), std::back_inserter(common));
            if (! common.empty())
                edges.push_back({a, b});
        }
    return Graph(m, std::move(edges));
}

auto build_incidence(const GensatInstance &inst) -> Graph
{
    auto n = inst.variable_count;
    vector<Edge> edges;
    for (std::size_t j = 0; j < inst.constraints.size(); ++j)
        for (auto x : inst.constraints[j].scope)
            edges.push_back(make_edge(x, n + static_cast<int>(j)));
    return Graph(n + static_cast<int>(inst.constraints.size()), std::move(edges));
}

} // namespace twlab
