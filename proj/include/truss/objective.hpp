#ifndef TRUSS_OBJECTIVE_HPP
#define TRUSS_OBJECTIVE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "truss/design_space.hpp"
#include "truss/fem.hpp"
#include "truss/model.hpp"

namespace truss {

/// Response limits, symmetric about zero. A displacement limit of 0 means the
/// problem has none ("N/A"). The buckling hook exists but stays disabled: no
/// benchmark here activates it.
struct ConstraintSpec {
    double stress_limit = 0.0;
    double displacement_limit = 0.0;           // 0 => unconstrained
    std::vector<int> displacement_axes = {0, 1};
    bool buckling_enabled = false;

    bool has_displacement() const { return displacement_limit > 0.0; }

    void validate() const {
        if (!(stress_limit > 0.0)) throw InvalidDesignError("stress limit must be positive");
        if (displacement_limit < 0.0)
            throw InvalidDesignError("displacement limit must be positive or absent");
        if (buckling_enabled)
            throw InvalidDesignError("buckling constraint hook is not implemented");
    }
};

struct PenaltyConfig {
    double lambda = 1e5;
    double equality_tol = 1e-6;
};

/// Violation magnitude assigned when the analyzer fails outright, so the
/// optimizer sees a finite, steeply penalized value instead of a crash.
inline constexpr double kInstabilityViolation = 10.0;

struct Evaluation {
    double weight = 0.0;
    double penalized = 0.0;
    bool feasible = false;
    std::vector<double> violations;  // normalized magnitudes, all >= 0
};

/// Normalized constraint violations over every member and monitored DOF, all
/// load cases: g = max(0, |response|/limit - 1). Normalization keeps one
/// lambda meaningful across problems with mixed units. `monitored` flags the
/// free DOFs subject to the displacement limit (empty => all).
inline std::vector<double> violations(const AnalysisResult& result, const ConstraintSpec& spec,
                                      const std::vector<bool>& monitored = {}) {
    std::vector<double> g;
    for (const auto& s : result.stresses)
        for (Eigen::Index i = 0; i < s.size(); ++i)
            g.push_back(std::max(0.0, std::abs(s[i]) / spec.stress_limit - 1.0));
    if (spec.has_displacement()) {
        for (const auto& u : result.displacements)
            for (Eigen::Index i = 0; i < u.size(); ++i) {
                if (!monitored.empty() && !monitored[static_cast<std::size_t>(i)]) continue;
                g.push_back(std::max(0.0, std::abs(u[i]) / spec.displacement_limit - 1.0));
            }
    }
    return g;
}

/// f = W + lambda * sum g^2 + lambda * sum max(0, |h| - eps)^2. The equality
/// term is exercised only by tests; no benchmark here has equality
/// constraints.
inline double penalize(double w, const std::vector<double>& g, const PenaltyConfig& cfg,
                       const std::vector<double>& h = {}) {
    double p = 0.0;
    for (double v : g) p += v * v;
    double q = 0.0;
    for (double v : h) {
        const double e = std::max(0.0, std::abs(v) - cfg.equality_tol);
        q += e * e;
    }
    return w + cfg.lambda * (p + q);
}

/// Objective bound to one problem: decodes a design, analyzes it, scores it,
/// and counts evaluations (the budget currency). One instance per run; runs
/// with distinct seeds each own a counter and are summed by the harness.
class Objective {
public:
    Objective(const Analyzer& analyzer, const DesignSpace& space, const ConstraintSpec& spec,
              const PenaltyConfig& cfg = {})
        : analyzer_(&analyzer), space_(&space), spec_(&spec), cfg_(cfg) {
        // displacement axes -> free-DOF mask
        if (spec.has_displacement()) {
            const int dim = analyzer.model().dimension;
            mask_.resize(analyzer.free_dofs().size());
            for (std::size_t i = 0; i < mask_.size(); ++i) {
                const int axis = analyzer.free_dofs()[i] % dim;
                mask_[i] = std::find(spec.displacement_axes.begin(), spec.displacement_axes.end(),
                                     axis) != spec.displacement_axes.end();
            }
        }
    }

    const DesignSpace& space() const { return *space_; }
    const Analyzer& analyzer() const { return *analyzer_; }
    const PenaltyConfig& penalty() const { return cfg_; }
    std::uint64_t evaluations() const { return evals_; }

    Evaluation evaluate_continuous(const Eigen::VectorXd& x) {
        return evaluate_areas(space_->decode_continuous(x));
    }

    Evaluation evaluate_discrete(const std::vector<int>& idx) {
        return evaluate_areas(space_->decode_discrete(idx));
    }

    /// Analyze a fully decoded per-member area vector.
    Evaluation evaluate_areas(const Eigen::VectorXd& areas) {
        ++evals_;
        Evaluation ev;
        ev.weight = truss::weight(analyzer_->model(), areas);
        try {
            const AnalysisResult r = analyzer_->analyze(areas);
            ev.violations = masked_violations(r);
            ev.penalized = penalize(ev.weight, ev.violations, cfg_);
            ev.feasible = true;
            for (double g : ev.violations)
                if (g > 0.0) { ev.feasible = false; break; }
        } catch (const KinematicInstabilityError&) {
            ev.violations = {kInstabilityViolation};
            ev.penalized = ev.weight + cfg_.lambda * kInstabilityViolation;
            ev.feasible = false;
        }
        return ev;
    }

    /// Worst |response|/limit ratio per constraint family, for reporting.
    struct Margins {
        double stress_ratio = 0.0;
        double displacement_ratio = 0.0;
    };
    Margins margins(const AnalysisResult& r) const {
        Margins m;
        for (const auto& s : r.stresses)
            m.stress_ratio = std::max(m.stress_ratio, s.cwiseAbs().maxCoeff() / spec_->stress_limit);
        if (spec_->has_displacement())
            for (const auto& u : r.displacements)
                for (Eigen::Index i = 0; i < u.size(); ++i)
                    if (mask_[static_cast<std::size_t>(i)])
                        m.displacement_ratio = std::max(
                            m.displacement_ratio, std::abs(u[i]) / spec_->displacement_limit);
        return m;
    }

private:
    std::vector<double> masked_violations(const AnalysisResult& r) const {
        return violations(r, *spec_, mask_);
    }

    const Analyzer* analyzer_;
    const DesignSpace* space_;
    const ConstraintSpec* spec_;
    PenaltyConfig cfg_;
    std::vector<bool> mask_;
    std::uint64_t evals_ = 0;
};

} // namespace truss

#endif
