#ifndef TRUSS_RUN_RECORD_HPP
#define TRUSS_RUN_RECORD_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "truss/objective.hpp"

namespace truss {

/// Outcome of one seeded optimizer run.
///
/// `best_design`/`best_weight` hold the lightest *feasible* design evaluated
/// anywhere in the run; if the run never saw a feasible design they fall back
/// to the minimum-penalty design and `feasible` is false. `best_penalized`
/// always tracks the minimum penalized value seen. Recording the feasible
/// best separately matters because under the normalized quadratic penalty the
/// fitness minimum routinely sits a fraction of a percent inside the
/// infeasible region.
struct RunRecord {
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    double best_weight = 0.0;
    double best_penalized = 0.0;
    bool feasible = false;
    Eigen::VectorXd best_design;          // variable values (areas)
    std::vector<double> history;          // best-so-far penalized per iteration

    /// Fold one evaluated design into the record.
    void observe(const Eigen::VectorXd& values, const Evaluation& ev) {
        if (ev.penalized < best_penalized || !seen_) best_penalized = ev.penalized;
        if (ev.feasible) {
            if (!feasible || ev.weight < best_weight) {
                best_weight = ev.weight;
                best_design = values;
                feasible = true;
            }
        } else if (!feasible && (!seen_ || ev.penalized <= fallback_)) {
            fallback_ = ev.penalized;
            best_weight = ev.weight;
            best_design = values;
        }
        seen_ = true;
    }

private:
    bool seen_ = false;
    double fallback_ = 0.0;
};

} // namespace truss

#endif
