#pragma once

#include <twlab/graph.hpp>
#include <twlab/json_io.hpp>
#include <twlab/problems.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twlab {

enum class Pipeline { PcLc, LcPce, CliqueGensat, PcChosen, ChosenMinmax, PcMinmax };
enum class SolverChoice { Bf, Dp, Both };

auto pipeline_name(Pipeline p) -> std::string;
auto parse_pipeline(const std::string &name) -> Pipeline;
auto solver_name(SolverChoice s) -> std::string;
auto parse_solver(const std::string &name) -> SolverChoice;

/// What k and n mean depends on the pipeline:
///   pc-lc, pc-chosen, pc-minmax: k parts of n vertices each;
///   clique-gensat: n vertices, clique size k;
///   lc-pce: n vertices, k colors in the list universe;
///   chosen-minmax: n vertices (k unused).
/// p is the edge probability throughout.
struct ExperimentConfig {
    Pipeline pipeline = Pipeline::PcLc;
    int k = 2;
    int n = 2;
    double p = 0.5;
    bool plant = false;
    int cases = 10;
    std::uint64_t seed = 1;
    SolverChoice solver = SolverChoice::Bf;
    Weight max_weight = 4;
    Weight max_rho = 6;
    /// Lifts the size guards.
    bool unsafe = false;
    int jobs = 1;
};

/// Throws InputError when cfg is malformed or exceeds the pipeline's size
/// guard (unless cfg.unsafe).
void check_config(const ExperimentConfig &cfg);

struct CaseRecord {
    int case_index = 0;
    std::uint64_t case_seed = 0;
    bool source_answer = false;
    bool target_answer = false;
    std::optional<bool> dp_answer;
    bool agree = false;
    int witness_width = 0;
    int claimed_bound = 0;
    bool bound_ok = false;
    /// Witness decomposition validates against the target graph.
    bool witness_valid = false;
    /// Every yes-answer's certificate passed its checker.
    bool certificate_ok = false;
    /// Clique read back from the target's orientation(s); chosen pipelines only.
    std::optional<bool> extraction_ok;
    /// The explicit orientation built from the source clique is admissible.
    std::optional<bool> constructive_ok;
    double source_ms = 0;
    double reduce_ms = 0;
    double target_ms = 0;
    std::string note;
    /// Source and target instances, kept only for disagreeing or failing cases.
    std::optional<Json> replay;

    [[nodiscard]] auto passed() const -> bool;
};

struct ReportSummary {
    int total = 0;
    int agreements = 0;
    int disagreements = 0;
    int failed_checks = 0;
    int max_width_seen = -1;
};

struct VerificationReport {
    ExperimentConfig config;
    std::vector<CaseRecord> records;
    ReportSummary summary;

    [[nodiscard]] auto pass() const -> bool { return summary.disagreements == 0 && summary.failed_checks == 0; }
};

// Generators; all deterministic in their seed.

auto gen_partitioned(int k, int n, double p, bool plant, std::uint64_t seed) -> PartitionedGraph;
auto gen_graph(int n, double p, std::uint64_t seed) -> Graph;
/// Weights uniform on 1..max_w.
auto gen_weighted(int n, double edge_p, Weight max_w, std::uint64_t seed) -> std::pair<Graph, EdgeWeighting>;
/// rho uniform on 0..max_rho per vertex.
auto gen_rho(int vertex_count, Weight max_rho, std::uint64_t seed) -> std::vector<Weight>;
/// Lists drawn from 1..colors, each color kept with probability 1/2, so
/// empty lists occur.
auto gen_list_coloring(int n, double edge_p, int colors, std::uint64_t seed) -> ListColoringInstance;

/// Runs cfg.cases cases (across cfg.jobs threads); records come back in
/// case-index order.
auto verify_reduction(const ExperimentConfig &cfg) -> VerificationReport;
/// One case by itself, as verify_reduction would run it.
auto verify_case(const ExperimentConfig &cfg, int case_index) -> CaseRecord;
auto summarize(const std::vector<CaseRecord> &records) -> ReportSummary;

enum class ReportFormat { Json, Csv };

auto to_json(const ExperimentConfig &cfg) -> Json;
auto config_from_json(const Json &j) -> ExperimentConfig;
auto to_json(const VerificationReport &rep) -> Json;
auto report_from_json(const Json &j) -> VerificationReport;
auto report_csv(const VerificationReport &rep) -> std::string;
auto report_text(const VerificationReport &rep, ReportFormat format) -> std::string;
/// Format chosen by the caller; written atomically.
void emit_report(const VerificationReport &rep, const std::string &path, ReportFormat format);
/// Column / field names holding wall-clock timings.
auto timing_fields() -> const std::vector<std::string> &;

} // namespace twlab
