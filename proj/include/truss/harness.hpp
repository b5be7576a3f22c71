#ifndef TRUSS_HARNESS_HPP
#define TRUSS_HARNESS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "truss/benchmarks.hpp"
#include "truss/run_record.hpp"

namespace truss {

struct ExperimentConfig {
    std::string problem = "10bar";
    std::string algorithm = "sfoa";   // sfoa | sfoa-bestonly | de | pso
    Mode mode = Mode::Discrete;
    int runs = 30;
    std::uint64_t base_seed = 1;
    std::optional<std::uint64_t> budget_override;
    std::string data_dir = "data";

    void validate() const {
        if (runs < 1) throw InvalidDesignError("run count must be >= 1");
    }
};

/// Aggregates over the feasible runs of a campaign; infeasible runs are
/// counted separately and excluded from best/mean/std.
struct CampaignStats {
    double best = 0.0;
    double mean = 0.0;
    double stddev = 0.0;          // sample, n-1
    int feasible_runs = 0;
    int infeasible_runs = 0;
    std::uint64_t evaluations_per_run = 0;
    double wall_seconds = 0.0;
};

CampaignStats summarize(const std::vector<RunRecord>& records);

/// Seeded campaign: runs base_seed .. base_seed+runs-1, in parallel when the
/// platform allows (override thread count with TRUSSOPT_THREADS). Records are
/// returned in seed order, so output is deterministic.
std::vector<RunRecord> run_campaign(const BenchmarkProblem& problem, const ExperimentConfig& cfg,
                                    CampaignStats* stats = nullptr);

struct DesignReport {
    double weight = 0.0;
    double penalized = 0.0;
    bool feasible = false;
    double stress_ratio = 0.0;        // worst |sigma|/limit over members/cases
    double displacement_ratio = 0.0;  // worst |delta|/limit, 0 if no limit
    double max_violation = 0.0;
};

/// Analyze one explicit design (variable values). Discrete mode insists every
/// value is a member of the problem's section set.
DesignReport evaluate_design(const BenchmarkProblem& problem, const std::vector<double>& values,
                             Mode mode);

struct RankingRow {
    std::string algorithm;
    int rank_best = 0;
    int rank_mean = 0;
    double evals_per_10k = 0.0;
    int rank_std = 0;
    int tuning_changes = 0;
    double total = 0.0;
};

struct RankingInput {
    std::string algorithm;
    double best = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
    std::uint64_t evaluations = 0;
    int tuning_changes = 0;
};

/// Competition ranking per criterion (ties share the lower rank);
/// total = rank_best + rank_mean + evals/10000 + rank_std + tuning_changes.
std::vector<RankingRow> build_ranking(const std::vector<RankingInput>& inputs);

enum class ReportFormat { Csv, Json };

/// Write one row per run plus summary rows; optionally the per-run
/// convergence histories next to it ("<path>.history.csv"). Deterministic
/// except the wall-time comment.
void emit_report(const std::string& path, ReportFormat format, const ExperimentConfig& cfg,
                 const std::vector<RunRecord>& records, const CampaignStats& stats,
                 bool histories = false);

/// Software version baked into reports.
const char* version();

} // namespace truss

#endif
