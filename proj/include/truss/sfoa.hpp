#ifndef TRUSS_SFOA_HPP
#define TRUSS_SFOA_HPP

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <vector>

#include "truss/objective.hpp"
#include "truss/rng.hpp"
#include "truss/run_record.hpp"

namespace truss {

struct SfoaParams {
    int population = 10;        // N
    std::uint64_t budget = 2000;
    int kappa = 5;              // phase-change delay, iterations
    double m0 = 0.95;           // initial search radius
    double c = 0.9;             // radius contraction factor
    int n_res = 10;             // quantized-draw resolution
    /// cFOA comparison mode: the reposition scale term collapses to the
    /// centre's coordinate and the random-fly draw is never consumed.
    bool best_only = false;
    /// experiment: anchor reposition at the centre instead of the best fly
    bool centre_anchor = false;

    std::uint64_t iteration_cap() const {
        return population > 0 ? budget / static_cast<std::uint64_t>(population) : 0;
    }

    void validate() const {
        if (population < 2) throw InvalidDesignError("sfoa population must be >= 2");
        if (!(c > 0.0 && c < 1.0)) throw InvalidDesignError("sfoa c must lie in (0,1)");
        if (kappa < 1) throw InvalidDesignError("sfoa kappa must be >= 1");
        if (n_res < 1) throw InvalidDesignError("sfoa n_res must be >= 1");
        if (!(m0 > 0.0)) throw InvalidDesignError("sfoa m0 must be positive");
    }
};

/// Osphresis map: a planar coordinate pair smells as 1/distance-to-origin.
/// Degenerate pairs (distance under 1e-12) read as the upper bound; the
/// result is clamped into the variable's bounds before use.
inline double smell(double x, double y, double lower, double upper) {
    const double d = std::hypot(x, y);
    if (d < 1e-12) return upper;
    const double di = 1.0 / d;
    return di < lower ? lower : (di > upper ? upper : di);
}

/// Full swarm state, exposed for unit tests of each phase.
struct SwarmState {
    Eigen::MatrixXd x, y;          // population x variables
    Eigen::VectorXd fitness;       // Dm_i, penalized
    Eigen::MatrixXd prev_x, prev_y;
    Eigen::VectorXd prev_fitness;
    Eigen::VectorXd centre_x, centre_y;
    double centre_value = 0.0;
    double radius = 0.0;           // M[k]
    int timer = 0;                 // t, in [0, kappa]
    std::vector<double> centre_ring;  // centre value carried *into* iteration k
    std::uint64_t evaluations = 0;
    int iteration = 0;

    int population() const { return static_cast<int>(x.rows()); }
    int variables() const { return static_cast<int>(x.cols()); }

    int best_fly() const {
        int b = 0;
        for (int i = 1; i < population(); ++i)
            if (fitness[i] < fitness[b]) b = i;
        return b;
    }
};

namespace detail {

/// Evaluate fly i from its coordinates; returns its decoded variable values.
template <class Obj>
Eigen::VectorXd evaluate_fly(Obj& obj, Mode mode, const SwarmState& st, int i,
                             Evaluation& out) {
    const auto& space = obj.space();
    Eigen::VectorXd di(st.variables());
    for (int j = 0; j < st.variables(); ++j)
        di[j] = smell(st.x(i, j), st.y(i, j), space.lower[j], space.upper[j]);
    if (mode == Mode::Discrete) {
        const std::vector<int> idx = space.snap(di);
        out = obj.evaluate_discrete(idx);
        return space.values_of(idx);
    }
    out = obj.evaluate_continuous(di);
    return di;
}

} // namespace detail

/// Seed the first fly so it smells exactly x0 (coordinates 1/(x0*sqrt(2)))
/// and scatter N flies around it; x0 defaults to the bound midpoints.
/// The centre starts as the best initial fly.
template <class Obj>
SwarmState init_swarm(Obj& obj, const SfoaParams& p, Mode mode, Rng& rng,
                      RunRecord& rec, const Eigen::VectorXd* x0 = nullptr) {
    const auto& space = obj.space();
    const int m = space.variables;
    SwarmState st;
    st.radius = p.m0;
    Eigen::VectorXd seed_values =
        x0 ? *x0 : Eigen::VectorXd(0.5 * (space.lower + space.upper));
    st.centre_x.resize(m);
    st.centre_y.resize(m);
    for (int j = 0; j < m; ++j)
        st.centre_x[j] = st.centre_y[j] = 1.0 / (seed_values[j] * std::sqrt(2.0));
    st.x.resize(p.population, m);
    st.y.resize(p.population, m);
    st.fitness.resize(p.population);
    for (int i = 0; i < p.population; ++i)
        for (int j = 0; j < m; ++j) {
            st.x(i, j) = st.centre_x[j] * (1.0 + st.radius * quantized_uniform(rng, p.n_res));
            st.y(i, j) = st.centre_y[j] * (1.0 + st.radius * quantized_uniform(rng, p.n_res));
        }
    for (int i = 0; i < p.population; ++i) {
        Evaluation ev;
        const Eigen::VectorXd vals = detail::evaluate_fly(obj, mode, st, i, ev);
        st.fitness[i] = ev.penalized;
        rec.observe(vals, ev);
        ++st.evaluations;
    }
    const int b = st.best_fly();
    st.centre_x = st.x.row(b).transpose();
    st.centre_y = st.y.row(b).transpose();
    st.centre_value = st.fitness[b];
    st.prev_x = st.x;
    st.prev_y = st.y;
    st.prev_fitness = st.fitness;
    st.centre_ring.push_back(st.centre_value);
    return st;
}

/// Move every fly: anchored at the best fly, perturbed by the average of the
/// centre's and a random fly's coordinate, scaled by the radius and a fresh
/// quantized draw per coordinate.
inline void reposition(SwarmState& st, const SfoaParams& p, Rng& rng) {
    const int b = st.best_fly();
    st.prev_x = st.x;
    st.prev_y = st.y;
    st.prev_fitness = st.fitness;
    for (int i = 0; i < st.population(); ++i)
        for (int j = 0; j < st.variables(); ++j) {
            double ax = st.prev_x(b, j), ay = st.prev_y(b, j);   // anchor
            double sx, sy;                                       // perturbation scale
            if (p.best_only) {
                sx = st.centre_x[j];
                sy = st.centre_y[j];
            } else {
                const auto r = static_cast<int>(rng.below(static_cast<std::uint64_t>(st.population())));
                if (p.centre_anchor) {
                    ax = st.centre_x[j];
                    ay = st.centre_y[j];
                    sx = 0.5 * (st.prev_x(b, j) + st.prev_x(r, j));
                    sy = 0.5 * (st.prev_y(b, j) + st.prev_y(r, j));
                } else {
                    sx = 0.5 * (st.centre_x[j] + st.prev_x(r, j));
                    sy = 0.5 * (st.centre_y[j] + st.prev_y(r, j));
                }
            }
            st.x(i, j) = ax + sx * st.radius * quantized_uniform(rng, p.n_res);
            st.y(i, j) = ay + sy * st.radius * quantized_uniform(rng, p.n_res);
        }
}

/// Flies have memory: any fly whose fitness worsened returns to its previous
/// position and value (no re-evaluation charged).
inline void casting_revert(SwarmState& st) {
    for (int i = 0; i < st.population(); ++i)
        if (st.fitness[i] > st.prev_fitness[i]) {
            st.x.row(i) = st.prev_x.row(i);
            st.y.row(i) = st.prev_y.row(i);
            st.fitness[i] = st.prev_fitness[i];
        }
}

/// Centre takes the best fly's position when it strictly improves on it.
inline void select_centre(SwarmState& st) {
    const int b = st.best_fly();
    if (st.fitness[b] < st.centre_value) {
        st.centre_x = st.x.row(b).transpose();
        st.centre_y = st.y.row(b).transpose();
        st.centre_value = st.fitness[b];
    }
}

/// Surging / visual-contrast switch, gated by the response timer. Improvement
/// over the kappa-iteration window contracts the radius; stagnation moves the
/// centre to a uniformly chosen fly. The ring holds the centre value carried
/// into each iteration, so the iteration right after a contrast jump records
/// the jumped (worse) value and the following window reads as improved.
inline void phase_step(SwarmState& st, const SfoaParams& p, Rng& rng) {
    ++st.timer;
    if (st.timer > p.kappa) {
        const double window_ref =
            st.centre_ring[static_cast<std::size_t>(st.iteration - p.kappa)];
        if (st.fitness[st.best_fly()] < window_ref) {
            st.radius *= p.c;
        } else {
            const auto r = static_cast<int>(rng.below(static_cast<std::uint64_t>(st.population())));
            st.centre_x = st.x.row(r).transpose();
            st.centre_y = st.y.row(r).transpose();
            st.centre_value = st.fitness[r];
        }
        st.timer = 0;
    }
}

/// Per-iteration observables for contract tests.
struct SfoaTrace {
    std::vector<double> radius;
};

/// One full s-FOA run against the given objective. Deterministic per seed;
/// never exceeds the evaluation budget.
template <class Obj>
RunRecord sfoa_run(Obj& obj, const SfoaParams& p, Mode mode, std::uint64_t seed,
                   SfoaTrace* trace = nullptr) {
    p.validate();
    Rng rng(seed);
    RunRecord rec;
    rec.seed = seed;
    SwarmState st = init_swarm(obj, p, mode, rng, rec);
    rec.history.push_back(rec.best_penalized);
    if (trace) trace->radius.push_back(st.radius);
    while (st.evaluations < p.budget) {
        ++st.iteration;
        st.centre_ring.push_back(st.centre_value);
        reposition(st, p, rng);
        for (int i = 0; i < st.population(); ++i) {
            if (st.evaluations >= p.budget) {
                // unevaluated flies never flew
                st.x.row(i) = st.prev_x.row(i);
                st.y.row(i) = st.prev_y.row(i);
                st.fitness[i] = st.prev_fitness[i];
                continue;
            }
            Evaluation ev;
            const Eigen::VectorXd vals = detail::evaluate_fly(obj, mode, st, i, ev);
            st.fitness[i] = ev.penalized;
            rec.observe(vals, ev);
            ++st.evaluations;
        }
        casting_revert(st);
        select_centre(st);
        phase_step(st, p, rng);
        rec.history.push_back(rec.best_penalized);
        if (trace) trace->radius.push_back(st.radius);
    }
    rec.evaluations = st.evaluations;
    return rec;
}

} // namespace truss

#endif
