#include <twlab/cli.hpp>

#include <twlab/harness.hpp>
#include <twlab/json_io.hpp>
#include <twlab/reductions.hpp>
#include <twlab/rng.hpp>
#include <twlab/td_solvers.hpp>
#include <twlab/treewidth.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

using std::optional;
using std::ostream;
using std::string;
using std::vector;

namespace twlab::cli {

namespace {
    struct GenOptions {
        string kind = "kpartite";
        int k = 2;
        int n = 2;
        double p = 0.5;
        bool plant = false;
        std::uint64_t seed = 1;
        Weight max_weight = 4;
        Weight max_rho = 6;
        string output;
    };

    struct TwOptions {
        string method = "minfill";
        int limit = default_exact_limit;
        std::uint64_t seed = 0;
        int restarts = 0;
        string input;
        string output;
    };

    struct ReduceOptions {
        string pipeline;
        int k = 0;
        string input;
        string output;
        string witness;
    };

    struct SolveOptions {
        string solver = "bf";
        string input;
        string td;
        string witness_out;
        string expect;
    };

    struct VerifyOptions {
        ExperimentConfig cfg;
        string pipeline = "pc-lc";
        string solver = "bf";
        string report;
        string format;
    };

    auto join(const vector<int> &values) -> string
    {
        std::ostringstream out;
        for (std::size_t i = 0; i < values.size(); ++i)
            out << (i ? " " : "") << values[i];
        return out.str();
    }

    void write_json(const string &path, const Json &j, ostream &out)
    {
        auto text = j.dump(2) + "\n";
        if (path.empty() || path == "-")
            out << text;
        else
            write_file_atomic(path, text);
    }

    /// The graph behind a file that holds a graph, an instance, or a reduction output.
    auto graph_of(const Json &j) -> Graph
    {
        if (j.contains("instance"))
            return graph_of(j.at("instance"));
        if (! j.contains("type"))
            return graph_from_json(j).graph;
        auto inst = instance_from_json(j);
        if (auto *gs = std::get_if<GensatInstance>(&inst))
            return build_primal(*gs);
        return std::visit(
            [](auto &x) -> Graph {
                if constexpr (requires { x.graph; })
                    return x.graph;
                else
                    return Graph();
            },
            inst);
    }

    auto run_gen(const GenOptions &o, ostream &out, ostream &err) -> int
    {
        err << "twlab gen "
            << Json{{"kind", o.kind}, {"k", o.k}, {"n", o.n}, {"p", o.p}, {"plant", o.plant}, {"seed", o.seed}, {"max_weight", o.max_weight}, {"max_rho", o.max_rho}}.dump()
            << "\n";
        if (o.p < 0 || o.p > 1 || o.n < 0 || o.k < 0)
            throw InputError("gen needs k, n >= 0 and p in [0, 1]");
        if (o.kind == "kpartite") {
            write_json(o.output, to_json(gen_partitioned(o.k, o.n, o.p, o.plant, o.seed)), out);
            return exit_ok;
        }
        if (o.max_weight < 1 || o.max_rho < 0)
            throw InputError("max weight must be positive and max rho non-negative");
        Rng rng(o.seed);
        auto [g, w] = gen_weighted(o.n, o.p, o.max_weight, rng.next());
        ChosenOutdegreeInstance inst{g, w, gen_rho(o.n, o.max_rho, rng.next())};
        write_json(o.output, to_json(AnyInstance{inst}), out);
        return exit_ok;
    }

    auto run_tw(const TwOptions &o, ostream &out, ostream &err) -> int
    {
        err << "twlab tw " << Json{{"method", o.method}, {"limit", o.limit}, {"seed", o.seed}, {"restarts", o.restarts}, {"input", o.input}}.dump() << "\n";
        auto g = graph_of(read_json_file(o.input));
        TreeDecomposition td;
        if (o.method == "exact")
            td = exact_treewidth(g, o.limit).decomposition;
        else
            td = heuristic_decomposition(g, o.method == "minfill" ? HeuristicMethod::MinFill : HeuristicMethod::MinDegree, o.seed, o.restarts);
        auto check = validate(td, g);
        if (! check.ok())
            throw std::logic_error("produced an invalid decomposition: " + check.summary());
        out << width(td) << "\n";
        if (! o.output.empty())
            write_json(o.output, to_json(td), out);
        return exit_ok;
    }

    template <typename Output>
    auto emit_reduction(const ReduceOptions &o, const Output &result, const Graph &target, ostream &out) -> int
    {
        write_json(o.output, to_json(result), out);
        if (! o.witness.empty())
            write_file_atomic(o.witness, to_json(result.witness).dump(2) + "\n");
        out << "target: " << target.vertex_count() << " vertices, " << target.edge_count() << " edges; witness width "
            << width(result.witness) << " <= " << result.claimed_width_bound << "\n";
        if (! result.note.empty())
            out << "note: " << result.note << "\n";
        return exit_ok;
    }

    template <typename T>
    auto expect_instance(const AnyInstance &inst, const string &type) -> const T &
    {
        auto *x = std::get_if<T>(&inst);
        if (! x)
            throw InputError("expected a " + type + " instance, got " + instance_type(inst));
        return *x;
    }

    auto run_reduce(const ReduceOptions &o, ostream &out, ostream &err) -> int
    {
        err << "twlab reduce " << Json{{"pipeline", o.pipeline}, {"k", o.k}, {"input", o.input}, {"output", o.output}, {"witness", o.witness}}.dump() << "\n";
        auto j = read_json_file(o.input);
        auto pipeline = parse_pipeline(o.pipeline);
        switch (pipeline) {
        case Pipeline::PcLc: {
            auto r = pc_to_list_coloring(partitioned_from_json(j));
            return emit_reduction(o, r, r.instance.graph, out);
        }
        case Pipeline::LcPce: {
            auto r = lc_to_precoloring(expect_instance<ListColoringInstance>(instance_from_json(j), "list_coloring"));
            return emit_reduction(o, r, r.instance.graph, out);
        }
        case Pipeline::CliqueGensat: {
            auto r = clique_to_gensat(graph_from_json(j).graph, o.k);
            return emit_reduction(o, r, r.incidence, out);
        }
        case Pipeline::PcChosen: {
            auto r = pc_to_chosen_outdegree(partitioned_from_json(j));
            return emit_reduction(o, r, r.instance.graph, out);
        }
        case Pipeline::ChosenMinmax: {
            auto r = chosen_to_minmax(expect_instance<ChosenOutdegreeInstance>(instance_from_json(j), "chosen_outdegree"));
            return emit_reduction(o, r, r.instance.graph, out);
        }
        case Pipeline::PcMinmax: {
            auto r = chosen_to_minmax(pc_to_chosen_outdegree(partitioned_from_json(j)).instance);
            return emit_reduction(o, r, r.instance.graph, out);
        }
        }
        return exit_usage;
    }

    struct Solved {
        bool yes = false;
        Json witness;
        vector<string> summary;
    };

    auto nice_for(const Graph &g, const optional<TreeDecomposition> &td) -> NiceTreeDecomposition
    {
        return to_nice(td ? *td : heuristic_decomposition(g, HeuristicMethod::MinFill), g);
    }

    auto dp_line(const DpStats &stats) -> string
    {
        return "dp: largest table " + std::to_string(stats.largest_table) + ", states " + std::to_string(stats.total_states);
    }

    void describe_orientation(Solved &s, const Graph &g, const EdgeWeighting &w, const vector<Weight> &caps, const Orientation &lam, const string &what)
    {
        s.witness = {{"orientation", to_json(lam)}};
        if (! is_admissible(g, w, caps, lam))
            throw std::logic_error("solver returned an orientation violating " + what);
        s.summary.push_back(what + ": ok, max weighted outdegree " + std::to_string(max_weighted_outdegree(g, w, lam)));
    }

    auto solve_instance(const AnyInstance &inst, const string &solver, const optional<TreeDecomposition> &td) -> Solved
    {
        Solved s;
        auto type = instance_type(inst);
        if (solver == "flow") {
            auto *mm = std::get_if<MinMaxOutdegreeInstance>(&inst);
            if (! mm)
                throw InputError("the flow solver handles minmax_outdegree instances only, got " + type);
            mm->validate();
            auto value = flow_min_max_uniform(mm->graph, mm->weights);
            s.yes = value <= mm->r;
            s.summary.push_back("minimum max outdegree: " + std::to_string(value) + " (r = " + std::to_string(mm->r) + ")");
            return s;
        }
        bool dp = solver == "dp";
        DpStats stats;

        if (auto *lc = std::get_if<ListColoringInstance>(&inst)) {
            auto c = dp ? dp_list_coloring(*lc, nice_for(lc->graph, td), &stats) : bf_list_coloring(*lc);
            if ((s.yes = c.has_value())) {
                if (! is_list_coloring(*lc, *c))
                    throw std::logic_error("solver returned an improper list coloring");
                s.witness = {{"coloring", *c}};
                s.summary.push_back("proper list coloring: ok");
                s.summary.push_back("coloring: " + join(*c));
            }
        }
        else if (auto *pc = std::get_if<PrecoloringExtensionInstance>(&inst)) {
            optional<Coloring> c;
            if (dp) {
                ListColoringInstance lc{pc->graph, {}};
                for (auto color : pc->precolor) {
                    vector<int> list;
                    for (int x = 1; x <= pc->r; ++x)
                        if (color == 0 || color == x)
                            list.push_back(x);
                    lc.lists.push_back(std::move(list));
                }
                c = dp_list_coloring(lc, nice_for(pc->graph, td), &stats);
            }
            else {
                c = bf_precoloring(*pc);
            }
            if ((s.yes = c.has_value())) {
                if (! is_precoloring_extension(*pc, *c))
                    throw std::logic_error("solver returned an invalid extension");
                s.witness = {{"coloring", *c}};
                s.summary.push_back("precoloring extension: ok");
                s.summary.push_back("coloring: " + join(*c));
            }
        }
        else if (auto *co = std::get_if<ChosenOutdegreeInstance>(&inst)) {
            auto lam = dp ? dp_chosen_outdegree(*co, nice_for(co->graph, td), &stats) : bf_chosen_outdegree(*co);
            if ((s.yes = lam.has_value()))
                describe_orientation(s, co->graph, co->weights, co->rho, *lam, "rho-admissible");
        }
        else if (auto *mm = std::get_if<MinMaxOutdegreeInstance>(&inst)) {
            auto lam = dp ? min_max_outdegree(*mm, nice_for(mm->graph, td), &stats) : bf_min_max_outdegree(*mm);
            if ((s.yes = lam.has_value()))
                describe_orientation(s, mm->graph, mm->weights, vector<Weight>(static_cast<std::size_t>(mm->graph.vertex_count()), mm->r), *lam,
                                     "max outdegree within r");
        }
        else {
            if (dp)
                throw InputError("no decomposition solver for " + type + "; use --solver bf");
            if (auto *eq = std::get_if<EquitableColoringInstance>(&inst)) {
                auto c = bf_equitable(*eq);
                if ((s.yes = c.has_value())) {
                    s.witness = {{"coloring", *c}};
                    s.summary.push_back("equitable coloring: " + string(is_equitable_coloring(*eq, *c) ? "ok" : "FAILED"));
                }
            }
            else if (auto *gf = std::get_if<GeneralFactorInstance>(&inst)) {
                auto f = bf_general_factor(*gf);
                if ((s.yes = f.has_value())) {
                    s.witness = {{"factor", *f}};
                    s.summary.push_back("general factor: " + string(is_general_factor(*gf, *f) ? "ok" : "FAILED"));
                }
            }
            else if (auto *gs = std::get_if<GensatInstance>(&inst)) {
                auto tau = bf_gensat(*gs);
                if ((s.yes = tau.has_value())) {
                    s.witness = {{"assignment", *tau}};
                    s.summary.push_back("satisfying assignment: " + string(satisfies(*gs, *tau) ? "ok" : "FAILED"));
                }
            }
        }
        if (dp)
            s.summary.push_back(dp_line(stats));
        return s;
    }

    auto run_solve(const SolveOptions &o, ostream &out, ostream &err) -> int
    {
        err << "twlab solve " << Json{{"solver", o.solver}, {"input", o.input}, {"td", o.td}, {"expect", o.expect}}.dump() << "\n";
        auto j = read_json_file(o.input);
        bool reduction = j.contains("instance");
        auto inst = instance_from_json(reduction ? j.at("instance") : j);
        optional<TreeDecomposition> td;
        if (! o.td.empty())
            td = decomposition_from_json(read_json_file(o.td));
        else if (reduction && j.contains("witness"))
            td = decomposition_from_json(j.at("witness"));

        auto s = solve_instance(inst, o.solver, td);
        out << (s.yes ? "yes" : "no") << "\n";
        for (auto &line : s.summary)
            out << line << "\n";

        // a gadget file carries its source, so the clique can be read back
        auto *co = std::get_if<ChosenOutdegreeInstance>(&inst);
        if (s.yes && co && reduction && j.contains("source") && s.witness.contains("orientation")) {
            auto gadget = pc_to_chosen_outdegree(partitioned_from_json(j.at("source")));
            if (gadget.instance == *co && ! gadget.canonical_infeasible) {
                auto clique = extract_clique(gadget, orientation_from_json(s.witness.at("orientation"), co->graph));
                out << "clique: " << join(clique) << "\n";
            }
        }
        if (! o.witness_out.empty() && s.yes)
            write_file_atomic(o.witness_out, s.witness.dump(2) + "\n");
        if (! o.expect.empty() && o.expect != (s.yes ? "yes" : "no"))
            return exit_failed;
        return exit_ok;
    }

    auto run_verify(VerifyOptions o, ostream &out, ostream &err) -> int
    {
        auto &cfg = o.cfg;
        cfg.pipeline = parse_pipeline(o.pipeline);
        cfg.solver = parse_solver(o.solver);
        if (auto *env = std::getenv("TWLAB_GUARD_OVERRIDE"); env && string(env) == "1")
            cfg.unsafe = true;
        auto format = o.format;
        if (format.empty())
            format = std::filesystem::path(o.report).extension() == ".csv" ? "csv" : "json";
        err << "twlab verify " << to_json(cfg).dump() << "\n";

        auto rep = verify_reduction(cfg);
        if (! o.report.empty())
            emit_report(rep, o.report, format == "csv" ? ReportFormat::Csv : ReportFormat::Json);
        auto &s = rep.summary;
        out << pipeline_name(cfg.pipeline) << ": " << s.agreements << "/" << s.total << " agree, " << s.disagreements << " disagree, "
            << s.failed_checks << " failed checks, max width " << s.max_width_seen << "\n";
        out << (rep.pass() ? "PASS" : "FAIL") << "\n";
        return rep.pass() ? exit_ok : exit_failed;
    }
}

auto run(int argc, const char *const *argv, ostream &out, ostream &err) -> int
{
    CLI::App app{"Treewidth reductions lab: generate, reduce, solve and verify."};
    app.name("twlab");
    app.require_subcommand(1);

    GenOptions gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate a seeded instance");
    gen_cmd->add_option("--kind", gen.kind, "kpartite (partitioned graph) or weighted (chosen_outdegree instance)")
        ->check(CLI::IsMember({"kpartite", "weighted"}));
    gen_cmd->add_option("-k", gen.k, "number of parts");
    gen_cmd->add_option("-n", gen.n, "part size (kpartite) or vertex count (weighted)");
    gen_cmd->add_option("-p", gen.p, "edge probability");
    gen_cmd->add_flag("--plant", gen.plant, "complete one transversal to a clique");
    gen_cmd->add_option("--seed", gen.seed);
    gen_cmd->add_option("--max-weight", gen.max_weight);
    gen_cmd->add_option("--max-rho", gen.max_rho);
    gen_cmd->add_option("-o,--output", gen.output, "output file (default stdout)");

    TwOptions tw;
    auto *tw_cmd = app.add_subcommand("tw", "Compute a tree decomposition and print its width");
    tw_cmd->add_option("--method", tw.method)->check(CLI::IsMember({"minfill", "mindeg", "exact"}));
    tw_cmd->add_option("--limit", tw.limit, "vertex limit for exact search");
    tw_cmd->add_option("--seed", tw.seed, "tie-break seed for restarts");
    tw_cmd->add_option("--restarts", tw.restarts, "randomized restarts for the heuristics");
    tw_cmd->add_option("file", tw.input)->required();
    tw_cmd->add_option("-o,--output", tw.output, "write the decomposition here");

    ReduceOptions red;
    auto *red_cmd = app.add_subcommand("reduce", "Apply a reduction and write the target with its witness");
    red_cmd->add_option("--pipeline", red.pipeline)->required()->check(CLI::IsMember({"pc-lc", "lc-pce", "clique-gensat", "pc-chosen", "chosen-minmax", "pc-minmax"}));
    red_cmd->add_option("-k", red.k, "clique size (clique-gensat)");
    red_cmd->add_option("file", red.input)->required();
    red_cmd->add_option("-o,--output", red.output)->required();
    red_cmd->add_option("--witness", red.witness, "also write the witness decomposition here");

    SolveOptions sol;
    auto *sol_cmd = app.add_subcommand("solve", "Solve an instance (or a reduction output's target)");
    sol_cmd->add_option("--solver", sol.solver)->check(CLI::IsMember({"bf", "dp", "flow"}));
    sol_cmd->add_option("file", sol.input)->required();
    sol_cmd->add_option("--td", sol.td, "decomposition for the dp solver");
    sol_cmd->add_option("--witness-out", sol.witness_out, "write the certificate here on yes");
    sol_cmd->add_option("--expect", sol.expect, "exit 1 unless the verdict matches")->check(CLI::IsMember({"yes", "no"}));

    VerifyOptions ver;
    auto *ver_cmd = app.add_subcommand("verify", "Check a reduction against the oracles on seeded cases");
    ver_cmd->add_option("--pipeline", ver.pipeline)->required()->check(CLI::IsMember({"pc-lc", "lc-pce", "clique-gensat", "pc-chosen", "chosen-minmax", "pc-minmax"}));
    ver_cmd->add_option("-k", ver.cfg.k);
    ver_cmd->add_option("-n", ver.cfg.n);
    ver_cmd->add_option("-p", ver.cfg.p);
    ver_cmd->add_flag("--plant", ver.cfg.plant);
    ver_cmd->add_option("--cases", ver.cfg.cases);
    ver_cmd->add_option("--seed", ver.cfg.seed);
    ver_cmd->add_option("--solver", ver.solver)->check(CLI::IsMember({"bf", "dp", "both"}));
    ver_cmd->add_option("--max-weight", ver.cfg.max_weight);
    ver_cmd->add_option("--max-rho", ver.cfg.max_rho);
    ver_cmd->add_option("--jobs", ver.cfg.jobs);
    ver_cmd->add_flag("--unsafe", ver.cfg.unsafe, "lift the size guards");
    ver_cmd->add_option("--report", ver.report, "report file (.csv selects csv)");
    ver_cmd->add_option("--format", ver.format)->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    }
    catch (const CLI::ParseError &e) {
        err << "twlab: error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (*gen_cmd)
            return run_gen(gen, out, err);
        if (*tw_cmd)
            return run_tw(tw, out, err);
        if (*red_cmd)
            return run_reduce(red, out, err);
        if (*sol_cmd)
            return run_solve(sol, out, err);
        if (*ver_cmd)
            return run_verify(ver, out, err);
    }
    catch (const InputError &e) {
        err << "twlab: error: " << e.what() << "\n";
        return exit_usage;
    }
    catch (const std::logic_error &e) {
        err << "twlab: internal error: " << e.what() << "\n";
        return exit_failed;
    }
    catch (const std::exception &e) {
        err << "twlab: error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

auto run(const vector<string> &args, ostream &out, ostream &err) -> int
{
    vector<const char *> argv{"twlab"};
    for (auto &a : args)
        argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace twlab::cli
