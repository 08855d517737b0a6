#include <twlab/td_solvers.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <string>

using std::map;
using std::optional;
using std::pair;
using std::string;
using std::vector;

namespace twlab {

namespace {
    void require_nice(const NiceTreeDecomposition &ntd, const Graph &g)
    {
        auto problems = check_nice(ntd, g);
        if (! problems.empty())
            throw InputError("not a nice decomposition of the instance graph: " + problems.front());
    }

    auto position(const VertexSet &bag, Vertex v) -> std::size_t
    {
        return static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    }

    template <typename T>
    auto erased(const vector<T> &s, std::size_t pos) -> vector<T>
    {
        auto out = s;
        out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
        return out;
    }

    template <typename T>
    auto inserted(const vector<T> &s, std::size_t pos, T value) -> vector<T>
    {
        auto out = s;
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(pos), value);
        return out;
    }

    template <typename Table>
    void record(DpStats *stats, const Table &table)
    {
        if (! stats)
            return;
        stats->largest_table = std::max(stats->largest_table, table.size());
        stats->total_states += table.size();
    }
}

auto dp_list_coloring(const ListColoringInstance &inst, const NiceTreeDecomposition &ntd, DpStats *stats) -> optional<Coloring>
{
    inst.validate();
    auto &g = inst.graph;
    require_nice(ntd, g);

    using State = vector<int>;
    // value: for Forget nodes, the forgotten vertex's color in the child state
    vector<map<State, int>> tables(ntd.nodes.size());

    for (std::size_t t = 0; t < ntd.nodes.size(); ++t) {
        auto &node = ntd.nodes[t];
        auto &table = tables[t];
        switch (node.kind) {
        case NiceKind::Leaf:
            table.emplace(State{}, 0);
            break;
        case NiceKind::Introduce: {
            auto pos = position(node.bag, node.vertex);
            auto list = inst.lists[node.vertex];
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
            for (auto &[s, _] : tables[node.children[0]])
                for (auto c : list)
                    table.emplace(inserted(s, pos, c), 0);
            break;
        }
        case NiceKind::IntroduceEdge: {
            auto &e = g.edge(node.edge);
            auto pu = position(node.bag, e.u), pv = position(node.bag, e.v);
            for (auto &[s, _] : tables[node.children[0]])
                if (s[pu] != s[pv])
                    table.emplace(s, 0);
            break;
        }
        case NiceKind::Forget: {
            auto pos = position(ntd.nodes[node.children[0]].bag, node.vertex);
            for (auto &[s, _] : tables[node.children[0]])
                table.emplace(erased(s, pos), s[pos]);
            break;
        }
        case NiceKind::Join: {
            auto &right = tables[node.children[1]];
            for (auto &[s, _] : tables[node.children[0]])
                if (right.count(s))
                    table.emplace(s, 0);
            break;
        }
        }
        record(stats, table);
    }

    auto root = ntd.root();
    if (tables[root].empty())
        return std::nullopt;

    Coloring color(static_cast<std::size_t>(g.vertex_count()), 0);
    vector<pair<int, State>> stack{{root, State{}}};
    while (! stack.empty()) {
        auto [t, s] = std::move(stack.back());
        stack.pop_back();
        auto &node = ntd.nodes[t];
        switch (node.kind) {
        case NiceKind::Leaf:
            break;
        case NiceKind::Introduce:
            stack.emplace_back(node.children[0], erased(s, position(node.bag, node.vertex)));
            break;
        case NiceKind::IntroduceEdge:
            stack.emplace_back(node.children[0], std::move(s));
            break;
        case NiceKind::Forget: {
            auto c = tables[t].at(s);
            color[node.vertex] = c;
            stack.emplace_back(node.children[0], inserted(s, position(ntd.nodes[node.children[0]].bag, node.vertex), c));
            break;
        }
        case NiceKind::Join:
            stack.emplace_back(node.children[0], s);
            stack.emplace_back(node.children[1], std::move(s));
            break;
        }
    }
    return color;
}

auto dp_chosen_outdegree(const ChosenOutdegreeInstance &inst, const NiceTreeDecomposition &ntd, DpStats *stats) -> optional<Orientation>
{
    inst.validate();
    auto &g = inst.graph;
    auto &rho = inst.rho;
    require_nice(ntd, g);

    using State = vector<Weight>;
    struct Back {
        Weight value = 0;      // Forget: the dropped accumulator
        bool tail_is_u = true; // IntroduceEdge: which endpoint emits the edge
        State left;            // Join: the left child's state
    };
    vector<map<State, Back>> tables(ntd.nodes.size());

    auto state_bound = [&](const VertexSet &bag) {
        constexpr auto cap = std::numeric_limits<std::size_t>::max();
        std::size_t bound = 1;
        for (auto v : bag) {
            auto f = static_cast<std::size_t>(rho[v]) + 1;
            bound = bound > cap / f ? cap : bound * f;
        }
        return bound;
    };

    for (std::size_t t = 0; t < ntd.nodes.size(); ++t) {
        auto &node = ntd.nodes[t];
        auto &table = tables[t];
        switch (node.kind) {
        case NiceKind::Leaf:
            table.emplace(State{}, Back{});
            break;
        case NiceKind::Introduce: {
            auto pos = position(node.bag, node.vertex);
            for (auto &[s, _] : tables[node.children[0]])
                table.emplace(inserted<Weight>(s, pos, 0), Back{});
            break;
        }
        case NiceKind::IntroduceEdge: {
            auto &e = g.edge(node.edge);
            auto w = inst.weights.weight(node.edge);
            auto pu = position(node.bag, e.u), pv = position(node.bag, e.v);
            for (auto &[s, _] : tables[node.children[0]]) {
                if (s[pu] + w <= rho[e.u]) {
                    auto next = s;
                    next[pu] += w;
                    table.emplace(std::move(next), Back{0, true, {}});
                }
                if (s[pv] + w <= rho[e.v]) {
                    auto next = s;
                    next[pv] += w;
                    table.emplace(std::move(next), Back{0, false, {}});
                }
            }
            break;
        }
        case NiceKind::Forget: {
            auto pos = position(ntd.nodes[node.children[0]].bag, node.vertex);
            for (auto &[s, _] : tables[node.children[0]])
                table.emplace(erased(s, pos), Back{s[pos], true, {}});
            break;
        }
        case NiceKind::Join: {
            auto &right = tables[node.children[1]];
            for (auto &[l, _] : tables[node.children[0]])
                for (auto &[r, __] : right) {
                    State sum(l.size());
                    bool fits = true;
                    for (std::size_t i = 0; i < l.size() && fits; ++i) {
                        sum[i] = l[i] + r[i];
                        fits = sum[i] <= rho[node.bag[i]];
                    }
                    if (fits)
                        table.emplace(std::move(sum), Back{0, true, l});
                }
            break;
        }
        }
        if (table.size() > state_bound(node.bag))
            throw std::logic_error("outdegree DP table exceeds the product bound at node " + std::to_string(t));
        record(stats, table);
    }

    auto root = ntd.root();
    if (tables[root].empty())
        return std::nullopt;

    vector<pair<Vertex, Vertex>> arcs(static_cast<std::size_t>(g.edge_count()), {-1, -1});
    vector<pair<int, State>> stack{{root, State{}}};
    while (! stack.empty()) {
        auto [t, s] = std::move(stack.back());
        stack.pop_back();
        auto &node = ntd.nodes[t];
        switch (node.kind) {
        case NiceKind::Leaf:
            break;
        case NiceKind::Introduce:
            stack.emplace_back(node.children[0], erased(s, position(node.bag, node.vertex)));
            break;
        case NiceKind::IntroduceEdge: {
            auto &back = tables[t].at(s);
            auto &e = g.edge(node.edge);
            auto tail = back.tail_is_u ? e.u : e.v;
            arcs[node.edge] = back.tail_is_u ? pair{e.u, e.v} : pair{e.v, e.u};
            s[position(node.bag, tail)] -= inst.weights.weight(node.edge);
            stack.emplace_back(node.children[0], std::move(s));
            break;
        }
        case NiceKind::Forget: {
            auto value = tables[t].at(s).value;
            stack.emplace_back(node.children[0], inserted(s, position(ntd.nodes[node.children[0]].bag, node.vertex), value));
            break;
        }
        case NiceKind::Join: {
            auto left = tables[t].at(s).left;
            State right(s.size());
            for (std::size_t i = 0; i < s.size(); ++i)
                right[i] = s[i] - left[i];
            stack.emplace_back(node.children[0], std::move(left));
            stack.emplace_back(node.children[1], std::move(right));
            break;
        }
        }
    }
    return Orientation(g, std::move(arcs));
}

auto min_max_outdegree(const MinMaxOutdegreeInstance &inst, const NiceTreeDecomposition &ntd, DpStats *stats) -> optional<Orientation>
{
    inst.validate_decision();
    ChosenOutdegreeInstance chosen{inst.graph, inst.weights, vector<Weight>(static_cast<std::size_t>(inst.graph.vertex_count()), inst.r)};
    return dp_chosen_outdegree(chosen, ntd, stats);
}

namespace {
    /// Max flow by augmenting paths restricted to residual capacity >= delta,
    /// halving delta down to 1.
    class ScalingMaxFlow {
    public:
        explicit ScalingMaxFlow(int nodes) :
            out_(static_cast<std::size_t>(nodes))
        {
        }

        void add_arc(int from, int to, long capacity)
        {
            out_[from].push_back(static_cast<int>(arcs_.size()));
            arcs_.push_back({to, capacity});
            out_[to].push_back(static_cast<int>(arcs_.size()));
            arcs_.push_back({from, 0});
            max_capacity_ = std::max(max_capacity_, capacity);
        }

        auto run(int source, int sink) -> long
        {
            long flow = 0;
            long delta = 1;
            while (delta * 2 <= max_capacity_)
                delta *= 2;
            for (; delta >= 1; delta /= 2)
                while (auto pushed = augment(source, sink, delta))
                    flow += pushed;
            return flow;
        }

    private:
        struct Arc {
            int to;
            long residual;
        };

        auto augment(int source, int sink, long delta) -> long
        {
            vector<int> via(out_.size(), -1);
            std::deque<int> queue{source};
            vector<char> seen(out_.size(), 0);
            seen[source] = 1;
            while (! queue.empty() && ! seen[sink]) {
                auto x = queue.front();
                queue.pop_front();
                for (auto a : out_[x]) {
                    auto &arc = arcs_[a];
                    if (arc.residual >= delta && ! seen[arc.to]) {
                        seen[arc.to] = 1;
                        via[arc.to] = a;
                        queue.push_back(arc.to);
                    }
                }
            }
            if (! seen[sink])
                return 0;
            long bottleneck = std::numeric_limits<long>::max();
            for (int x = sink; x != source; x = arcs_[via[x] ^ 1].to)
                bottleneck = std::min(bottleneck, arcs_[via[x]].residual);
            for (int x = sink; x != source; x = arcs_[via[x] ^ 1].to) {
                arcs_[via[x]].residual -= bottleneck;
                arcs_[via[x] ^ 1].residual += bottleneck;
            }
            return bottleneck;
        }

        vector<vector<int>> out_;
        vector<Arc> arcs_;
        long max_capacity_ = 1;
    };
}

auto flow_orientable(const Graph &g, int d) -> bool
{
    auto m = g.edge_count(), n = g.vertex_count();
    if (m == 0)
        return true;
    if (d < 0)
        return false;
    // source 0, edge nodes 1..m, vertex nodes m+1..m+n, sink m+n+1
    auto sink = m + n + 1;
    ScalingMaxFlow flow(m + n + 2);
    for (int e = 0; e < m; ++e) {
        flow.add_arc(0, 1 + e, 1);
        flow.add_arc(1 + e, 1 + m + g.edge(e).u, 1);
        flow.add_arc(1 + e, 1 + m + g.edge(e).v, 1);
    }
    for (Vertex v = 0; v < n; ++v)
        flow.add_arc(1 + m + v, sink, d);
    return flow.run(0, sink) == m;
}

auto flow_min_max_uniform(const Graph &g, Weight c) -> Weight
{
    if (c < 1)
        throw InputError("uniform edge weight must be positive");
    auto m = g.edge_count(), n = g.vertex_count();
    if (m == 0)
        return 0;
    // every orientation has some vertex with outdegree >= ceil(m/n); Delta always suffices
    int lo = (m + n - 1) / n, hi = g.max_degree();
    while (lo < hi) {
        auto mid = lo + (hi - lo) / 2;
        if (flow_orientable(g, mid))
            hi = mid;
        else
            lo = mid + 1;
    }
    return c * lo;
}

auto flow_min_max_uniform(const Graph &g, const EdgeWeighting &w) -> Weight
{
    if (w.size() != g.edge_count())
        throw InputError("weighting is not a companion of the graph");
    if (! w.is_uniform())
        throw InputError("flow solver needs uniform edge weights");
    return g.edge_count() == 0 ? 0 : flow_min_max_uniform(g, w.weight(0));
}

} // namespace twlab
