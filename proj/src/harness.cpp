#include "truss/harness.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace truss {

const char* version() { return "trussopt 0.1.0"; }

namespace {

int thread_count(int runs) {
    if (const char* env = std::getenv("TRUSSOPT_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return std::min(n, runs);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return std::max(1, std::min<int>(hw ? static_cast<int>(hw) : 1, runs));
}

RunRecord run_one(const BenchmarkProblem& problem, const Analyzer& analyzer,
                  const ExperimentConfig& cfg, std::uint64_t seed) {
    Objective obj(analyzer, problem.space, problem.constraints);
    const AlgorithmBudget& alg = problem.algorithm(cfg.algorithm);
    RunRecord rec;
    if (cfg.algorithm == "de") {
        DeParams p = alg.de;
        if (cfg.budget_override) p.budget = *cfg.budget_override;
        rec = de_run(obj, p, cfg.mode, seed);
    } else if (cfg.algorithm == "pso") {
        PsoParams p = alg.pso;
        if (cfg.budget_override) p.budget = *cfg.budget_override;
        rec = pso_run(obj, p, cfg.mode, seed);
    } else {
        SfoaParams p = alg.sfoa;
        if (cfg.budget_override) p.budget = *cfg.budget_override;
        rec = sfoa_run(obj, p, cfg.mode, seed);
    }
    return rec;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

CampaignStats summarize(const std::vector<RunRecord>& records) {
    CampaignStats s;
    double sum = 0.0;
    for (const auto& r : records) {
        s.evaluations_per_run = std::max(s.evaluations_per_run, r.evaluations);
        if (!r.feasible) {
            ++s.infeasible_runs;
            continue;
        }
        if (s.feasible_runs == 0 || r.best_weight < s.best) s.best = r.best_weight;
        sum += r.best_weight;
        ++s.feasible_runs;
    }
    if (s.feasible_runs > 0) s.mean = sum / s.feasible_runs;
    if (s.feasible_runs > 1) {
        double ss = 0.0;
        for (const auto& r : records)
            if (r.feasible) ss += (r.best_weight - s.mean) * (r.best_weight - s.mean);
        s.stddev = std::sqrt(ss / (s.feasible_runs - 1));
    }
    return s;
}

std::vector<RunRecord> run_campaign(const BenchmarkProblem& problem, const ExperimentConfig& cfg,
                                    CampaignStats* stats) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();
    Analyzer analyzer(problem.model);
    std::vector<RunRecord> records(static_cast<std::size_t>(cfg.runs));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= cfg.runs) return;
            records[static_cast<std::size_t>(k)] =
                run_one(problem, analyzer, cfg, cfg.base_seed + static_cast<std::uint64_t>(k));
        }
    };
    const int nt = thread_count(cfg.runs);
    if (nt <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nt));
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (stats) {
        *stats = summarize(records);
        stats->wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return records;
}

DesignReport evaluate_design(const BenchmarkProblem& problem, const std::vector<double>& values,
                             Mode mode) {
    if (static_cast<int>(values.size()) != problem.space.variables)
        throw InvalidDesignError("design has " + std::to_string(values.size()) +
                                 " values; problem expects " +
                                 std::to_string(problem.space.variables));
    if (mode == Mode::Discrete) {
        for (double v : values)
            if (problem.space.exact_index(v) < 0)
                throw InvalidDesignError("area " + std::to_string(v) +
                                         " is not a member of the discrete section set");
    }
    Eigen::VectorXd areas(static_cast<Eigen::Index>(problem.space.group_map.size()));
    for (std::size_t e = 0; e < problem.space.group_map.size(); ++e)
        areas[static_cast<Eigen::Index>(e)] =
            values[static_cast<std::size_t>(problem.space.group_map[e])];

    Analyzer analyzer(problem.model);
    Objective obj(analyzer, problem.space, problem.constraints);
    DesignReport rep;
    const Evaluation ev = obj.evaluate_areas(areas);
    rep.weight = ev.weight;
    rep.penalized = ev.penalized;
    rep.feasible = ev.feasible;
    for (double g : ev.violations) rep.max_violation = std::max(rep.max_violation, g);
    try {
        const AnalysisResult r = analyzer.analyze(areas);
        const auto m = obj.margins(r);
        rep.stress_ratio = m.stress_ratio;
        rep.displacement_ratio = m.displacement_ratio;
    } catch (const KinematicInstabilityError&) {
        rep.stress_ratio = rep.displacement_ratio = std::numeric_limits<double>::infinity();
    }
    return rep;
}

std::vector<RankingRow> build_ranking(const std::vector<RankingInput>& inputs) {
    if (inputs.size() < 2) throw InvalidDesignError("ranking needs at least two algorithms");
    auto rank_of = [&](auto key, std::size_t i) {
        int r = 1;
        for (std::size_t k = 0; k < inputs.size(); ++k)
            if (key(inputs[k]) < key(inputs[i])) ++r;
        return r;
    };
    std::vector<RankingRow> rows;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        RankingRow row;
        row.algorithm = inputs[i].algorithm;
        row.rank_best = rank_of([](const RankingInput& a) { return a.best; }, i);
        row.rank_mean = rank_of([](const RankingInput& a) { return a.mean; }, i);
        row.rank_std = rank_of([](const RankingInput& a) { return a.stddev; }, i);
        row.evals_per_10k = static_cast<double>(inputs[i].evaluations) / 10000.0;
        row.tuning_changes = inputs[i].tuning_changes;
        row.total = row.rank_best + row.rank_mean + row.evals_per_10k + row.rank_std +
                    row.tuning_changes;
        rows.push_back(row);
    }
    return rows;
}

void emit_report(const std::string& path, ReportFormat format, const ExperimentConfig& cfg,
                 const std::vector<RunRecord>& records, const CampaignStats& stats,
                 bool histories) {
    std::vector<const RunRecord*> sorted;
    for (const auto& r : records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const RunRecord* a, const RunRecord* b) { return a->seed < b->seed; });

    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");

    if (format == ReportFormat::Json) {
        nlohmann::json j;
        j["version"] = version();
        j["config"] = {{"problem", cfg.problem},   {"algo", cfg.algorithm},
                       {"mode", to_string(cfg.mode)}, {"runs", cfg.runs},
                       {"base_seed", cfg.base_seed}};
        j["summary"] = {{"best", stats.best},
                        {"mean", stats.mean},
                        {"std", stats.stddev},
                        {"feasible_runs", stats.feasible_runs},
                        {"infeasible_runs", stats.infeasible_runs},
                        {"evaluations_per_run", stats.evaluations_per_run}};
        j["runs"] = nlohmann::json::array();
        for (const auto* r : sorted) {
            nlohmann::json row = {{"seed", r->seed},
                                  {"evals", r->evaluations},
                                  {"best_weight", r->best_weight},
                                  {"best_penalized", r->best_penalized},
                                  {"feasible", r->feasible}};
            row["design"] = std::vector<double>(r->best_design.data(),
                                                r->best_design.data() + r->best_design.size());
            if (histories) row["history"] = r->history;
            j["runs"].push_back(std::move(row));
        }
        out << j.dump(1) << "\n";
        return;
    }

    out << "# " << version() << "\n";
    out << "# problem=" << cfg.problem << " algo=" << cfg.algorithm
        << " mode=" << to_string(cfg.mode) << " runs=" << cfg.runs
        << " base_seed=" << cfg.base_seed << "\n";
    out << "# wall_time_s=" << stats.wall_seconds << "\n";
    const int m = sorted.empty() ? 0 : static_cast<int>(sorted.front()->best_design.size());
    out << "seed,evals,best_weight,best_penalized,feasible";
    for (int j = 1; j <= m; ++j) out << ",v" << j;
    out << "\n";
    for (const auto* r : sorted) {
        out << r->seed << ',' << r->evaluations << ',' << fmt(r->best_weight) << ','
            << fmt(r->best_penalized) << ',' << (r->feasible ? 1 : 0);
        for (Eigen::Index j = 0; j < r->best_design.size(); ++j)
            out << ',' << fmt(r->best_design[j]);
        out << "\n";
    }
    out << "summary,best," << fmt(stats.best) << "\n";
    out << "summary,mean," << fmt(stats.mean) << "\n";
    out << "summary,std," << fmt(stats.stddev) << "\n";
    out << "summary,feasible_runs," << stats.feasible_runs << "\n";
    out << "summary,infeasible_runs," << stats.infeasible_runs << "\n";

    if (histories) {
        std::ofstream hist(path + ".history.csv");
        if (!hist) throw Error("cannot open '" + path + ".history.csv' for writing");
        hist << "seed,iteration,best_penalized\n";
        for (const auto* r : sorted)
            for (std::size_t k = 0; k < r->history.size(); ++k)
                hist << r->seed << ',' << k << ',' << fmt(r->history[k]) << "\n";
    }
}

} // namespace truss
