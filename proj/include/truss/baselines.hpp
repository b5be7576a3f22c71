#ifndef TRUSS_BASELINES_HPP
#define TRUSS_BASELINES_HPP

#include <Eigen/Dense>

#include <cstdint>

#include "truss/objective.hpp"
#include "truss/rng.hpp"
#include "truss/run_record.hpp"

namespace truss {

struct DeParams {
    int population = 12;
    double cr = 0.2368;   // crossover probability
    double f = 0.6702;    // mutation factor
    std::uint64_t budget = 2000;

    void validate() const {
        if (population < 4) throw InvalidDesignError("de population must be >= 4");
        if (cr < 0.0 || cr > 1.0) throw InvalidDesignError("de cr must lie in [0,1]");
        if (!(f > 0.0)) throw InvalidDesignError("de f must be positive");
    }
};

struct PsoParams {
    int population = 12;
    double inertia = 0.8;
    double c1 = 1.5;
    double c2 = 2.0;
    std::uint64_t budget = 2000;

    void validate() const {
        if (population < 1) throw InvalidDesignError("pso population must be >= 1");
        if (inertia < 0.8 || inertia > 1.2)
            throw InvalidDesignError("pso inertia must lie in [0.8, 1.2]");
    }
};

namespace detail {

/// Both baselines carry continuous variable vectors; in discrete mode the
/// candidate snaps onto the nearest section for evaluation (same decoding
/// rule as the s-FOA smell stage).
template <class Obj>
Evaluation evaluate_candidate(Obj& obj, Mode mode, const Eigen::VectorXd& x,
                              Eigen::VectorXd& decoded) {
    const auto& space = obj.space();
    if (mode == Mode::Discrete) {
        const std::vector<int> idx = space.snap(x);
        decoded = space.values_of(idx);
        return obj.evaluate_discrete(idx);
    }
    decoded = x.cwiseMax(space.lower).cwiseMin(space.upper);
    return obj.evaluate_continuous(x);
}

} // namespace detail

/// Classic DE/rand/1/bin with bound clamping and greedy selection.
template <class Obj>
RunRecord de_run(Obj& obj, const DeParams& p, Mode mode, std::uint64_t seed) {
    p.validate();
    if (p.budget < 2 * static_cast<std::uint64_t>(p.population))
        throw InvalidDesignError("de budget must cover at least two generations");
    Rng rng(seed);
    RunRecord rec;
    rec.seed = seed;
    const auto& space = obj.space();
    const int m = space.variables;
    const int n = p.population;
    Eigen::MatrixXd pop(n, m);
    Eigen::VectorXd fit(n);
    std::uint64_t evals = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) pop(i, j) = rng.uniform(space.lower[j], space.upper[j]);
        Eigen::VectorXd dec;
        const Evaluation ev = detail::evaluate_candidate(obj, mode, pop.row(i).transpose(), dec);
        fit[i] = ev.penalized;
        rec.observe(dec, ev);
        ++evals;
    }
    rec.history.push_back(rec.best_penalized);
    while (evals < p.budget) {
        for (int i = 0; i < n && evals < p.budget; ++i) {
            int r1, r2, r3;
            do { r1 = static_cast<int>(rng.below(n)); } while (r1 == i);
            do { r2 = static_cast<int>(rng.below(n)); } while (r2 == i || r2 == r1);
            do { r3 = static_cast<int>(rng.below(n)); } while (r3 == i || r3 == r1 || r3 == r2);
            const int jrand = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
            Eigen::VectorXd trial = pop.row(i).transpose();
            for (int j = 0; j < m; ++j) {
                if (rng.uniform() < p.cr || j == jrand) {
                    const double v = pop(r1, j) + p.f * (pop(r2, j) - pop(r3, j));
                    trial[j] = std::clamp(v, space.lower[j], space.upper[j]);
                }
            }
            Eigen::VectorXd dec;
            const Evaluation ev = detail::evaluate_candidate(obj, mode, trial, dec);
            ++evals;
            rec.observe(dec, ev);
            if (ev.penalized <= fit[i]) {
                pop.row(i) = trial;
                fit[i] = ev.penalized;
            }
        }
        rec.history.push_back(rec.best_penalized);
    }
    rec.evaluations = evals;
    return rec;
}

/// Per-iteration observables for contract tests.
struct PsoTrace {
    std::vector<double> max_abs_velocity;
};

/// Inertia-weight PSO: per-component cognitive/social draws each step,
/// velocity clamped at the variable's upper bound, position clamped at the
/// box bounds.
template <class Obj>
RunRecord pso_run(Obj& obj, const PsoParams& p, Mode mode, std::uint64_t seed,
                  PsoTrace* trace = nullptr) {
    p.validate();
    if (p.budget < static_cast<std::uint64_t>(p.population))
        throw InvalidDesignError("pso budget must cover the initial swarm");
    Rng rng(seed);
    RunRecord rec;
    rec.seed = seed;
    const auto& space = obj.space();
    const int m = space.variables;
    const int n = p.population;
    Eigen::MatrixXd x(n, m), v = Eigen::MatrixXd::Zero(n, m), pbest(n, m);
    Eigen::VectorXd pval(n);
    std::uint64_t evals = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) x(i, j) = rng.uniform(space.lower[j], space.upper[j]);
        Eigen::VectorXd dec;
        const Evaluation ev = detail::evaluate_candidate(obj, mode, x.row(i).transpose(), dec);
        pbest.row(i) = x.row(i);
        pval[i] = ev.penalized;
        rec.observe(dec, ev);
        ++evals;
    }
    int g = 0;
    for (int i = 1; i < n; ++i)
        if (pval[i] < pval[g]) g = i;
    Eigen::VectorXd gbest = pbest.row(g).transpose();
    double gval = pval[g];
    rec.history.push_back(rec.best_penalized);
    while (evals < p.budget) {
        for (int i = 0; i < n && evals < p.budget; ++i) {
            for (int j = 0; j < m; ++j) {
                const double rp = rng.uniform();
                const double rg = rng.uniform();
                double vj = p.inertia * v(i, j) + p.c1 * rp * (pbest(i, j) - x(i, j)) +
                            p.c2 * rg * (gbest[j] - x(i, j));
                const double vmax = space.upper[j];
                v(i, j) = std::clamp(vj, -vmax, vmax);
                x(i, j) = std::clamp(x(i, j) + v(i, j), space.lower[j], space.upper[j]);
            }
            Eigen::VectorXd dec;
            const Evaluation ev = detail::evaluate_candidate(obj, mode, x.row(i).transpose(), dec);
            ++evals;
            rec.observe(dec, ev);
            if (ev.penalized < pval[i]) {
                pbest.row(i) = x.row(i);
                pval[i] = ev.penalized;
                if (ev.penalized < gval) {
                    gbest = x.row(i).transpose();
                    gval = ev.penalized;
                }
            }
        }
        rec.history.push_back(rec.best_penalized);
        if (trace) trace->max_abs_velocity.push_back(v.cwiseAbs().maxCoeff());
    }
    rec.evaluations = evals;
    return rec;
}

} // namespace truss

#endif
