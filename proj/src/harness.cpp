#include <twlab/harness.hpp>

#include <twlab/reductions.hpp>
#include <twlab/rng.hpp>
#include <twlab/td_solvers.hpp>
#include <twlab/treewidth.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

using std::optional;
using std::string;
using std::to_string;
using std::vector;

namespace twlab {

namespace {
    const vector<std::pair<Pipeline, string>> pipeline_names = {
        {Pipeline::PcLc, "pc-lc"},
        {Pipeline::LcPce, "lc-pce"},
        {Pipeline::CliqueGensat, "clique-gensat"},
        {Pipeline::PcChosen, "pc-chosen"},
        {Pipeline::ChosenMinmax, "chosen-minmax"},
        {Pipeline::PcMinmax, "pc-minmax"},
    };

    // chosen-minmax instances keep at most this many edges per vertex
    constexpr int edges_per_vertex = 2;

    struct Guard {
        int max_k;
        int max_n;
    };

    auto guard_for(Pipeline p) -> Guard
    {
        switch (p) {
        case Pipeline::PcLc: return {4, 5};
        case Pipeline::LcPce: return {6, 10};
        case Pipeline::CliqueGensat: return {4, 8};
        case Pipeline::PcChosen: return {3, 3};
        case Pipeline::ChosenMinmax: return {1 << 30, 7};
        case Pipeline::PcMinmax: return {3, 2};
        }
        return {0, 0};
    }

    template <typename F>
    auto timed(double &ms, F &&f)
    {
        auto start = std::chrono::steady_clock::now();
        auto result = f();
        ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return result;
    }

    auto answer(bool yes) -> string { return yes ? "yes" : "no"; }

    /// Shared bookkeeping for one case while its pipeline runs.
    struct CaseRun {
        const ExperimentConfig &cfg;
        CaseRecord &rec;
        Json source_json;
        Json target_json;

        [[nodiscard]] auto want_bf() const -> bool { return cfg.solver != SolverChoice::Dp; }
        [[nodiscard]] auto want_dp() const -> bool { return cfg.solver != SolverChoice::Bf; }

        void witness(const TreeDecomposition &td, const Graph &g, int bound)
        {
            rec.witness_valid = validate(td, g).ok();
            rec.witness_width = width(td);
            rec.claimed_bound = bound;
            rec.bound_ok = rec.witness_width <= bound;
        }

        /// Combines the bf and dp verdicts into target_answer / dp_answer.
        void target(optional<bool> bf, optional<bool> dp)
        {
            rec.dp_answer = dp;
            rec.target_answer = bf ? *bf : dp.value_or(false);
        }
    };

    auto coloring_as_lists(const PrecoloringExtensionInstance &inst) -> ListColoringInstance
    {
        ListColoringInstance lc{inst.graph, {}};
        for (auto c : inst.precolor) {
            if (c != 0) {
                lc.lists.push_back({c});
                continue;
            }
            vector<int> all;
            for (int color = 1; color <= inst.r; ++color)
                all.push_back(color);
            lc.lists.push_back(std::move(all));
        }
        return lc;
    }

    void run_pc_lc(CaseRun &run, Rng &rng)
    {
        auto &rec = run.rec;
        auto &cfg = run.cfg;
        auto pg = gen_partitioned(cfg.k, cfg.n, cfg.p, cfg.plant, rng.next());
        run.source_json = to_json(pg);
        auto clique = timed(rec.source_ms, [&] { return bf_partitioned_clique(pg); });
        rec.source_answer = clique.has_value();
        bool certs = ! clique || is_clique(pg.graph(), *clique);

        auto out = timed(rec.reduce_ms, [&] { return pc_to_list_coloring(pg); });
        run.target_json = to_json(out);
        run.witness(out.witness, out.instance.graph, out.claimed_width_bound);

        optional<bool> bf, dp;
        if (run.want_bf()) {
            auto c = timed(rec.target_ms, [&] { return bf_list_coloring(out.instance); });
            bf = c.has_value();
            certs = certs && (! c || is_list_coloring(out.instance, *c));
        }
        if (run.want_dp()) {
            auto c = timed(rec.target_ms, [&] { return dp_list_coloring(out.instance, to_nice(out.witness, out.instance.graph)); });
            dp = c.has_value();
            certs = certs && (! c || is_list_coloring(out.instance, *c));
        }
        run.target(bf, dp);
        rec.certificate_ok = certs;
    }

    void run_lc_pce(CaseRun &run, Rng &rng)
    {
        auto &rec = run.rec;
        auto &cfg = run.cfg;
        auto n = static_cast<int>(rng.between(1, cfg.n));
        auto inst = gen_list_coloring(n, cfg.p, cfg.k, rng.next());
        run.source_json = to_json(AnyInstance{inst});
        auto c = timed(rec.source_ms, [&] { return bf_list_coloring(inst); });
        rec.source_answer = c.has_value();
        bool certs = ! c || is_list_coloring(inst, *c);

        auto out = timed(rec.reduce_ms, [&] { return lc_to_precoloring(inst); });
        run.target_json = to_json(out);
        run.witness(out.witness, out.instance.graph, out.claimed_width_bound);

        optional<bool> bf, dp;
        if (run.want_bf()) {
            auto ext = timed(rec.target_ms, [&] { return bf_precoloring(out.instance); });
            bf = ext.has_value();
            certs = certs && (! ext || is_precoloring_extension(out.instance, *ext));
        }
        if (run.want_dp()) {
            // precoloring extension is list coloring with singleton lists on the precolored vertices
            auto ext = timed(rec.target_ms, [&] {
                return dp_list_coloring(coloring_as_lists(out.instance), to_nice(out.witness, out.instance.graph));
            });
            dp = ext.has_value();
            certs = certs && (! ext || is_precoloring_extension(out.instance, *ext));
        }
        run.target(bf, dp);
        rec.certificate_ok = certs;
    }

    void run_clique_gensat(CaseRun &run, Rng &rng)
    {
        auto &rec = run.rec;
        auto &cfg = run.cfg;
        auto n = static_cast<int>(rng.between(1, cfg.n));
        auto g = gen_graph(n, cfg.p, rng.next());
        if (cfg.plant && n >= cfg.k) {
            vector<Vertex> order(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v)
                order[v] = v;
            rng.shuffle(order);
            auto edges = g.edges();
            for (int a = 0; a < cfg.k; ++a)
                for (int b = a + 1; b < cfg.k; ++b)
                    if (! g.has_edge(order[a], order[b]))
                        edges.push_back(make_edge(order[a], order[b]));
            std::sort(edges.begin(), edges.end());
            g = Graph(n, std::move(edges));
        }
        run.source_json = to_json(g);
        auto clique = timed(rec.source_ms, [&] { return bf_clique(g, cfg.k); });
        rec.source_answer = clique.has_value();
        bool certs = ! clique || is_clique(g, *clique);

        auto out = timed(rec.reduce_ms, [&] { return clique_to_gensat(g, cfg.k); });
        run.target_json = to_json(out);
        run.witness(out.witness, out.incidence, out.claimed_width_bound);
        auto pairs = cfg.k * (cfg.k - 1) / 2;
        bool dual_ok = out.dual.vertex_count() == pairs && validate(out.dual_witness, out.dual).ok()
            && width(out.dual_witness) <= out.dual_bound && exact_treewidth(out.dual).treewidth <= out.dual_bound;
        if (! dual_ok)
            rec.note = "dual graph check failed";
        rec.bound_ok = rec.bound_ok && dual_ok;

        auto tau = timed(rec.target_ms, [&] { return bf_gensat(out.instance); });
        certs = certs && (! tau || satisfies(out.instance, *tau));
        if (run.want_dp() && ! run.want_bf())
            rec.note = "no decomposition solver for gensat; brute force used";
        run.target(tau.has_value(), std::nullopt);
        rec.certificate_ok = certs;
    }

    void run_pc_chosen(CaseRun &run, Rng &rng)
    {
        auto &rec = run.rec;
        auto &cfg = run.cfg;
        auto pg = gen_partitioned(cfg.k, cfg.n, cfg.p, cfg.plant, rng.next());
        run.source_json = to_json(pg);
        auto clique = timed(rec.source_ms, [&] { return bf_partitioned_clique(pg); });
        rec.source_answer = clique.has_value();
        bool certs = ! clique || is_clique(pg.graph(), *clique);

        auto out = timed(rec.reduce_ms, [&] { return pc_to_chosen_outdegree(pg); });
        run.target_json = to_json(out);
        auto &inst = out.instance;
        run.witness(out.witness, inst.graph, out.claimed_width_bound);
        if (out.canonical_infeasible)
            rec.note = out.note;

        vector<Orientation> found;
        optional<bool> bf, dp;
        if (run.want_bf()) {
            auto lam = timed(rec.target_ms, [&] { return bf_chosen_outdegree(inst); });
            bf = lam.has_value();
            if (lam)
                found.push_back(*lam);
        }
        if (run.want_dp()) {
            auto lam = timed(rec.target_ms, [&] { return dp_chosen_outdegree(inst, to_nice(out.witness, inst.graph)); });
            dp = lam.has_value();
            if (lam)
                found.push_back(*lam);
        }
        run.target(bf, dp);

        if (! found.empty()) {
            bool extracted = true;
            for (auto &lam : found) {
                certs = certs && is_admissible(inst.graph, inst.weights, inst.rho, lam);
                try {
                    extracted = extracted && is_clique(pg.graph(), extract_clique(out, lam));
                }
                catch (const std::exception &e) {
                    extracted = false;
                    rec.note = e.what();
                }
            }
            rec.extraction_ok = extracted;
        }
        if (clique) {
            try {
                rec.constructive_ok = is_admissible(inst.graph, inst.weights, inst.rho, clique_orientation(out, *clique));
            }
            catch (const std::exception &e) {
                rec.constructive_ok = false;
                rec.note = e.what();
            }
        }
        rec.certificate_ok = certs;
    }

    /// Target half shared by chosen-minmax and pc-minmax.
    auto solve_minmax(CaseRun &run, const ReductionOutput<MinMaxOutdegreeInstance> &out, bool certs) -> bool
    {
        auto &rec = run.rec;
        auto &inst = out.instance;
        inst.validate();
        optional<bool> bf, dp;
        auto fits = [&](const Orientation &lam) { return max_weighted_outdegree(inst.graph, inst.weights, lam) <= inst.r; };
        if (run.want_bf()) {
            auto lam = timed(rec.target_ms, [&] { return bf_min_max_outdegree(inst); });
            bf = lam.has_value();
            certs = certs && (! lam || fits(*lam));
        }
        if (run.want_dp()) {
            auto lam = timed(rec.target_ms, [&] { return min_max_outdegree(inst, to_nice(out.witness, inst.graph)); });
            dp = lam.has_value();
            certs = certs && (! lam || fits(*lam));
        }
        run.target(bf, dp);
        return certs;
    }

    void run_chosen_minmax(CaseRun &run, Rng &rng)
    {
        auto &rec = run.rec;
        auto &cfg = run.cfg;
        auto n = static_cast<int>(rng.between(1, cfg.n));
        auto [g, w] = gen_weighted(n, cfg.p, cfg.max_weight, rng.next());
        if (g.edge_count() > edges_per_vertex * n) {
            vector<int> keep(static_cast<std::size_t>(g.edge_count()));
            for (int e = 0; e < g.edge_count(); ++e)
                keep[e] = e;
            rng.shuffle(keep);
            keep.resize(static_cast<std::size_t>(edges_per_vertex * n));
            std::sort(keep.begin(), keep.end());
            vector<Edge> edges;
            vector<Weight> weights;
            for (auto e : keep) {
                edges.push_back(g.edge(e));
                weights.push_back(w.weight(e));
            }
            g = Graph(n, std::move(edges));
            w = EdgeWeighting(g, std::move(weights));
        }
        ChosenOutdegreeInstance src{g, w, gen_rho(n, cfg.max_rho, rng.next())};
        run.source_json = to_json(AnyInstance{src});
        auto lam = timed(rec.source_ms, [&] { return bf_chosen_outdegree(src); });
        rec.source_answer = lam.has_value();
        bool certs = ! lam || is_admissible(src.graph, src.weights, src.rho, *lam);

        auto out = timed(rec.reduce_ms, [&] { return chosen_to_minmax(src); });
        run.target_json = to_json(out);
        run.witness(out.witness, out.instance.graph, out.claimed_width_bound);
        if (! out.note.empty())
            rec.note = out.note;
        rec.certificate_ok = solve_minmax(run, out, certs);
    }

    void run_pc_minmax(CaseRun &run, Rng &rng)
    {
        auto &rec = run.rec;
        auto &cfg = run.cfg;
        auto pg = gen_partitioned(cfg.k, cfg.n, cfg.p, cfg.plant, rng.next());
        run.source_json = to_json(pg);
        auto clique = timed(rec.source_ms, [&] { return bf_partitioned_clique(pg); });
        rec.source_answer = clique.has_value();
        bool certs = ! clique || is_clique(pg.graph(), *clique);

        auto gadget = timed(rec.reduce_ms, [&] { return pc_to_chosen_outdegree(pg); });
        auto out = timed(rec.reduce_ms, [&] { return chosen_to_minmax(gadget.instance); });
        run.target_json = to_json(out);
        run.witness(out.witness, out.instance.graph, out.claimed_width_bound);
        bool gadget_ok = validate(gadget.witness, gadget.instance.graph).ok() && width(gadget.witness) <= gadget.claimed_width_bound;
        if (! gadget_ok)
            rec.note = "intermediate gadget witness failed";
        rec.bound_ok = rec.bound_ok && gadget_ok;
        rec.certificate_ok = solve_minmax(run, out, certs);
    }

    void csv_field(std::ostringstream &out, const string &text)
    {
        if (text.find_first_of(",\"\n") == string::npos) {
            out << text;
            return;
        }
        out << '"';
        for (auto ch : text) {
            if (ch == '"')
                out << '"';
            out << ch;
        }
        out << '"';
    }

    auto optional_answer(const optional<bool> &b, bool yes_no) -> Json
    {
        if (! b)
            return nullptr;
        if (yes_no)
            return answer(*b);
        return *b;
    }

    auto parse_answer(const Json &j, const char *name) -> bool
    {
        auto text = j.at(name).get<string>();
        if (text != "yes" && text != "no")
            throw InputError(string("field \"") + name + "\" must be yes or no");
        return text == "yes";
    }

    auto parse_optional(const Json &j, const char *name, bool yes_no) -> optional<bool>
    {
        if (! j.contains(name) || j.at(name).is_null())
            return std::nullopt;
        if (yes_no)
            return parse_answer(j, name);
        return j.at(name).get<bool>();
    }

    auto fixed3(double ms) -> string
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", ms);
        return buf;
    }
}

auto pipeline_name(Pipeline p) -> string
{
    for (auto &[value, name] : pipeline_names)
        if (value == p)
            return name;
    return "?";
}

auto parse_pipeline(const string &name) -> Pipeline
{
    for (auto &[value, n] : pipeline_names)
        if (n == name)
            return value;
    throw InputError("unknown pipeline \"" + name + "\"");
}

auto solver_name(SolverChoice s) -> string
{
    switch (s) {
    case SolverChoice::Bf: return "bf";
    case SolverChoice::Dp: return "dp";
    case SolverChoice::Both: return "both";
    }
    return "?";
}

auto parse_solver(const string &name) -> SolverChoice
{
    if (name == "bf")
        return SolverChoice::Bf;
    if (name == "dp")
        return SolverChoice::Dp;
    if (name == "both")
        return SolverChoice::Both;
    throw InputError("unknown solver \"" + name + "\"");
}

void check_config(const ExperimentConfig &cfg)
{
    if (cfg.cases < 1)
        throw InputError("cases must be at least 1");
    if (! (cfg.p >= 0.0 && cfg.p <= 1.0))
        throw InputError("p must lie in [0, 1]");
    if (cfg.n < 1)
        throw InputError("n must be at least 1");
    if (cfg.pipeline != Pipeline::ChosenMinmax && (cfg.k < 1 || (cfg.pipeline == Pipeline::CliqueGensat && cfg.k < 2)))
        throw InputError("k is too small for pipeline " + pipeline_name(cfg.pipeline));
    if (cfg.jobs < 1)
        throw InputError("jobs must be at least 1");
    if (cfg.max_weight < 1 || cfg.max_rho < 0)
        throw InputError("max weight must be positive and max rho non-negative");
    if (cfg.unsafe)
        return;
    auto guard = guard_for(cfg.pipeline);
    if (cfg.k > guard.max_k || cfg.n > guard.max_n)
        throw InputError("pipeline " + pipeline_name(cfg.pipeline) + " is guarded to k <= " + to_string(guard.max_k) + ", n <= "
                         + to_string(guard.max_n) + "; pass --unsafe or set TWLAB_GUARD_OVERRIDE=1 to lift");
}

auto gen_partitioned(int k, int n, double p, bool plant, std::uint64_t seed) -> PartitionedGraph
{
    Rng rng(seed);
    vector<VertexSet> parts(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j)
            parts[i].push_back(i * n + j);
    vector<Edge> edges;
    for (Vertex u = 0; u < k * n; ++u)
        for (Vertex v = u + 1; v < k * n; ++v)
            if (u / n != v / n && rng.bernoulli(p))
                edges.push_back({u, v});
    if (plant) {
        VertexSet pick;
        for (int i = 0; i < k; ++i)
            pick.push_back(i * n + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) {
                auto e = make_edge(pick[a], pick[b]);
                if (std::find(edges.begin(), edges.end(), e) == edges.end())
                    edges.push_back(e);
            }
        std::sort(edges.begin(), edges.end());
    }
    return PartitionedGraph(Graph(k * n, std::move(edges)), std::move(parts));
}

auto gen_graph(int n, double p, std::uint64_t seed) -> Graph
{
    Rng rng(seed);
    vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p))
                edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

auto gen_weighted(int n, double edge_p, Weight max_w, std::uint64_t seed) -> std::pair<Graph, EdgeWeighting>
{
    Rng rng(seed);
    auto g = gen_graph(n, edge_p, rng.next());
    vector<Weight> weights;
    for (int e = 0; e < g.edge_count(); ++e)
        weights.push_back(rng.between(1, max_w));
    EdgeWeighting w(g, std::move(weights));
    return {std::move(g), std::move(w)};
}

auto gen_rho(int vertex_count, Weight max_rho, std::uint64_t seed) -> vector<Weight>
{
    Rng rng(seed);
    vector<Weight> rho;
    for (int v = 0; v < vertex_count; ++v)
        rho.push_back(rng.between(0, max_rho));
    return rho;
}

auto gen_list_coloring(int n, double edge_p, int colors, std::uint64_t seed) -> ListColoringInstance
{
    Rng rng(seed);
    auto g = gen_graph(n, edge_p, rng.next());
    vector<vector<int>> lists(static_cast<std::size_t>(n));
    for (auto &list : lists)
        for (int c = 1; c <= colors; ++c)
            if (rng.bernoulli(0.5))
                list.push_back(c);
    return {std::move(g), std::move(lists)};
}

auto CaseRecord::passed() const -> bool
{
    return agree && bound_ok && witness_valid && certificate_ok && extraction_ok.value_or(true) && constructive_ok.value_or(true);
}

auto verify_case(const ExperimentConfig &cfg, int case_index) -> CaseRecord
{
    CaseRecord rec;
    rec.case_index = case_index;
    rec.case_seed = case_seed(cfg.seed, static_cast<std::uint64_t>(case_index));
    Rng rng(rec.case_seed);
    CaseRun run{cfg, rec, nullptr, nullptr};
    try {
        switch (cfg.pipeline) {
        case Pipeline::PcLc: run_pc_lc(run, rng); break;
        case Pipeline::LcPce: run_lc_pce(run, rng); break;
        case Pipeline::CliqueGensat: run_clique_gensat(run, rng); break;
        case Pipeline::PcChosen: run_pc_chosen(run, rng); break;
        case Pipeline::ChosenMinmax: run_chosen_minmax(run, rng); break;
        case Pipeline::PcMinmax: run_pc_minmax(run, rng); break;
        }
        rec.agree = rec.source_answer == rec.target_answer && (! rec.dp_answer || *rec.dp_answer == rec.source_answer);
    }
    catch (const std::exception &e) {
        // a broken case is a finding, not a crash
        rec.agree = false;
        rec.certificate_ok = false;
        rec.note = string("exception: ") + e.what();
    }
    if (! rec.passed())
        rec.replay = Json{{"source", run.source_json}, {"target", run.target_json}};
    return rec;
}

auto summarize(const vector<CaseRecord> &records) -> ReportSummary
{
    ReportSummary s;
    s.total = static_cast<int>(records.size());
    for (auto &r : records) {
        r.agree ? ++s.agreements : ++s.disagreements;
        if (! r.passed() && r.agree)
            ++s.failed_checks;
        s.max_width_seen = std::max(s.max_width_seen, r.witness_width);
    }
    return s;
}

auto verify_reduction(const ExperimentConfig &cfg) -> VerificationReport
{
    check_config(cfg);
    VerificationReport rep;
    rep.config = cfg;
    rep.records.resize(static_cast<std::size_t>(cfg.cases));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < cfg.cases; i = next++)
            rep.records[i] = verify_case(cfg, i);
    };
    auto threads = std::min(cfg.jobs, cfg.cases);
    if (threads <= 1) {
        worker();
    }
    else {
        vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    rep.summary = summarize(rep.records);
    return rep;
}

auto timing_fields() -> const vector<string> &
{
    static const vector<string> fields = {"source_ms", "reduce_ms", "target_ms"};
    return fields;
}

auto to_json(const ExperimentConfig &cfg) -> Json
{
    return {
        {"pipeline", pipeline_name(cfg.pipeline)},
        {"k", cfg.k},
        {"n", cfg.n},
        {"p", cfg.p},
        {"plant", cfg.plant},
        {"cases", cfg.cases},
        {"seed", cfg.seed},
        {"solver", solver_name(cfg.solver)},
        {"max_weight", cfg.max_weight},
        {"max_rho", cfg.max_rho},
        {"unsafe", cfg.unsafe},
        {"jobs", cfg.jobs},
    };
}

auto config_from_json(const Json &j) -> ExperimentConfig
{
    try {
        ExperimentConfig cfg;
        cfg.pipeline = parse_pipeline(j.at("pipeline").get<string>());
        cfg.k = j.at("k").get<int>();
        cfg.n = j.at("n").get<int>();
        cfg.p = j.at("p").get<double>();
        cfg.plant = j.at("plant").get<bool>();
        cfg.cases = j.at("cases").get<int>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.solver = parse_solver(j.at("solver").get<string>());
        cfg.max_weight = j.at("max_weight").get<Weight>();
        cfg.max_rho = j.at("max_rho").get<Weight>();
        cfg.unsafe = j.at("unsafe").get<bool>();
        cfg.jobs = j.at("jobs").get<int>();
        return cfg;
    }
    catch (const nlohmann::json::exception &e) {
        throw InputError(string("malformed config: ") + e.what());
    }
}

auto to_json(const VerificationReport &rep) -> Json
{
    auto records = Json::array();
    for (auto &r : rep.records) {
        Json j{
            {"case_index", r.case_index},
            {"case_seed", r.case_seed},
            {"source_answer", answer(r.source_answer)},
            {"target_answer", answer(r.target_answer)},
            {"dp_answer", optional_answer(r.dp_answer, true)},
            {"agree", r.agree},
            {"witness_width", r.witness_width},
            {"claimed_bound", r.claimed_bound},
            {"bound_ok", r.bound_ok},
            {"witness_valid", r.witness_valid},
            {"certificate_ok", r.certificate_ok},
            {"extraction_ok", optional_answer(r.extraction_ok, false)},
            {"constructive_ok", optional_answer(r.constructive_ok, false)},
            {"source_ms", r.source_ms},
            {"reduce_ms", r.reduce_ms},
            {"target_ms", r.target_ms},
            {"note", r.note},
        };
        if (r.replay)
            j["replay"] = *r.replay;
        records.push_back(std::move(j));
    }
    auto &s = rep.summary;
    return {
        {"config", to_json(rep.config)},
        {"records", records},
        {"summary",
         {{"total", s.total}, {"agreements", s.agreements}, {"disagreements", s.disagreements}, {"failed_checks", s.failed_checks}, {"max_width_seen", s.max_width_seen}}},
        {"pass", rep.pass()},
    };
}

auto report_from_json(const Json &j) -> VerificationReport
{
    try {
        VerificationReport rep;
        rep.config = config_from_json(j.at("config"));
        for (auto &r : j.at("records")) {
            CaseRecord rec;
            rec.case_index = r.at("case_index").get<int>();
            rec.case_seed = r.at("case_seed").get<std::uint64_t>();
            rec.source_answer = parse_answer(r, "source_answer");
            rec.target_answer = parse_answer(r, "target_answer");
            rec.dp_answer = parse_optional(r, "dp_answer", true);
            rec.agree = r.at("agree").get<bool>();
            rec.witness_width = r.at("witness_width").get<int>();
            rec.claimed_bound = r.at("claimed_bound").get<int>();
            rec.bound_ok = r.at("bound_ok").get<bool>();
            rec.witness_valid = r.at("witness_valid").get<bool>();
            rec.certificate_ok = r.at("certificate_ok").get<bool>();
            rec.extraction_ok = parse_optional(r, "extraction_ok", false);
            rec.constructive_ok = parse_optional(r, "constructive_ok", false);
            rec.source_ms = r.at("source_ms").get<double>();
            rec.reduce_ms = r.at("reduce_ms").get<double>();
            rec.target_ms = r.at("target_ms").get<double>();
            rec.note = r.at("note").get<string>();
            if (r.contains("replay"))
                rec.replay = r.at("replay");
            rep.records.push_back(std::move(rec));
        }
        auto &s = j.at("summary");
        rep.summary = {s.at("total").get<int>(), s.at("agreements").get<int>(), s.at("disagreements").get<int>(),
                       s.at("failed_checks").get<int>(), s.at("max_width_seen").get<int>()};
        return rep;
    }
    catch (const nlohmann::json::exception &e) {
        throw InputError(string("malformed report: ") + e.what());
    }
}

auto report_csv(const VerificationReport &rep) -> string
{
    std::ostringstream out;
    out << "case_index,case_seed,source_answer,target_answer,dp_answer,agree,witness_width,claimed_bound,bound_ok,"
           "witness_valid,certificate_ok,extraction_ok,constructive_ok,source_ms,reduce_ms,target_ms,note\n";
    auto flag = [](bool b) { return b ? "true" : "false"; };
    auto opt = [&](const optional<bool> &b) -> string { return b ? flag(*b) : ""; };
    for (auto &r : rep.records) {
        out << r.case_index << ',' << r.case_seed << ',' << answer(r.source_answer) << ',' << answer(r.target_answer) << ','
            << (r.dp_answer ? answer(*r.dp_answer) : "") << ',' << flag(r.agree) << ',' << r.witness_width << ','
            << r.claimed_bound << ',' << flag(r.bound_ok) << ',' << flag(r.witness_valid) << ',' << flag(r.certificate_ok)
            << ',' << opt(r.extraction_ok) << ',' << opt(r.constructive_ok) << ',' << fixed3(r.source_ms) << ','
            << fixed3(r.reduce_ms) << ',' << fixed3(r.target_ms) << ',';
        csv_field(out, r.note);
        out << '\n';
    }
    return out.str();
}

auto report_text(const VerificationReport &rep, ReportFormat format) -> string
{
    if (format == ReportFormat::Csv)
        return report_csv(rep);
    return to_json(rep).dump(2) + "\n";
}

void emit_report(const VerificationReport &rep, const string &path, ReportFormat format)
{
    write_file_atomic(path, report_text(rep, format));
}

} // namespace twlab
