#ifndef TRUSS_BENCHMARKS_HPP
#define TRUSS_BENCHMARKS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "truss/baselines.hpp"
#include "truss/design_space.hpp"
#include "truss/model.hpp"
#include "truss/objective.hpp"
#include "truss/sfoa.hpp"

namespace truss {

/// Per-algorithm run configuration as published, keyed by algorithm name
/// ("sfoa", "sfoa-bestonly", "de", "pso").
struct AlgorithmBudget {
    int population = 0;
    std::uint64_t budget = 0;
    SfoaParams sfoa;   // valid for the two sfoa entries
    DeParams de;       // valid for "de"
    PsoParams pso;     // valid for "pso"
};

struct BenchmarkProblem {
    std::string id;
    TrussModel model;
    DesignSpace space;
    ConstraintSpec constraints;
    std::map<std::string, AlgorithmBudget> algorithms;
    std::map<std::string, std::string> units;

    const AlgorithmBudget& algorithm(const std::string& name) const;
};

/// A published design used to cross-check the reconstructed geometry.
struct OracleDesign {
    std::string problem;
    std::string source;     // algorithm label as published
    Mode mode = Mode::Discrete;
    std::vector<double> values;   // one per design variable
    double published_weight = 0.0;
    std::string suspect;    // non-empty => excluded from the geometry gate

    bool is_suspect() const { return !suspect.empty(); }
};

/// The six benchmark ids, in presentation order.
const std::vector<std::string>& benchmark_ids();

/// Load and fully validate a problem from a JSON file, or by id from
/// `data_dir` ("<data_dir>/<id>.json").
BenchmarkProblem load_problem(const std::string& id_or_path,
                              const std::string& data_dir = "data");

/// All embedded published designs for one problem.
std::vector<OracleDesign> oracle_designs(const std::string& id);

struct GeometryCheck {
    OracleDesign design;
    double computed_weight = 0.0;
    double relative_error = 0.0;
    bool pass = false;
    bool skipped = false;   // suspect entries are listed but not gated
};

struct GeometryReport {
    std::string problem;
    std::vector<GeometryCheck> checks;
    bool pass = true;
};

/// Recompute every non-suspect published design's weight and compare with its
/// published value at the given relative tolerance.
GeometryReport validate_geometry(const BenchmarkProblem& problem, double tol = 1e-3);

} // namespace truss

#endif
