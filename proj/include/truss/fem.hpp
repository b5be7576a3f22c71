#ifndef TRUSS_FEM_HPP
#define TRUSS_FEM_HPP

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "truss/model.hpp"

namespace truss {

/// Relative equilibrium residual required of every solve.
inline constexpr double kEquilibriumTol = 1e-8;
/// Reciprocal-condition threshold below which K is treated as singular.
inline constexpr double kRcondFloor = 1e-12;

template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Euclidean length of one member.
inline double member_length(const TrussModel& model, int member_index) {
    const auto& m = model.members.at(static_cast<std::size_t>(member_index));
    const double len = (model.nodes.row(m.a) - model.nodes.row(m.b)).norm();
    if (!(len > 0.0)) throw DegenerateGeometryError("zero-length member");
    return len;
}

/// W = sum_i A_i * rho * L_i over all members.
template <class Derived>
double weight(const TrussModel& model, const Eigen::MatrixBase<Derived>& areas) {
    if (areas.size() != model.member_count())
        throw InvalidDesignError("area vector length does not match member count");
    double w = 0.0;
    for (int e = 0; e < model.member_count(); ++e) {
        if (!(areas[e] > 0.0)) throw InvalidDesignError("non-positive member area");
        w += areas[e] * model.density * member_length(model, e);
    }
    return w;
}

/// Direct-stiffness analyzer with the topology-dependent parts precomputed,
/// so repeated solves with fresh areas only assemble and factor K.
/// Dense LDLT is used throughout: the largest benchmark has ~150 free DOFs.
template <class Scalar = double>
class AnalyzerT {
public:
    explicit AnalyzerT(const TrussModel& model) : model_(model) {
        model.validate();
        const int dim = model.dimension;
        const int n = model.node_count();
        free_of_dof_.assign(static_cast<std::size_t>(n * dim), -1);
        for (int node = 0; node < n; ++node)
            for (int axis = 0; axis < dim; ++axis)
                if (!model.is_fixed(node, axis)) {
                    free_of_dof_[static_cast<std::size_t>(node * dim + axis)] =
                        static_cast<int>(free_dofs_.size());
                    free_dofs_.push_back(node * dim + axis);
                }
        const int m = model.member_count();
        lengths_.resize(m);
        dirs_.resize(m, dim);
        member_dofs_.resize(static_cast<std::size_t>(m));
        for (int e = 0; e < m; ++e) {
            lengths_[e] = static_cast<Scalar>(member_length(model, e));
            const auto& mem = model.members[static_cast<std::size_t>(e)];
            Eigen::RowVectorXd d = model.nodes.row(mem.b) - model.nodes.row(mem.a);
            dirs_.row(e) = (d / d.norm()).template cast<Scalar>();
            auto& md = member_dofs_[static_cast<std::size_t>(e)];
            md.clear();
            for (int axis = 0; axis < dim; ++axis)
                md.push_back(free_of_dof_[static_cast<std::size_t>(mem.a * dim + axis)]);
            for (int axis = 0; axis < dim; ++axis)
                md.push_back(free_of_dof_[static_cast<std::size_t>(mem.b * dim + axis)]);
        }
        loads_.resize(model.load_cases.size());
        for (std::size_t c = 0; c < model.load_cases.size(); ++c) {
            loads_[c] = VectorX<Scalar>::Zero(free_count());
            for (const auto& p : model.load_cases[c].loads) {
                const int k = free_of_dof_[static_cast<std::size_t>(p.node * dim + p.axis)];
                loads_[c][k] += static_cast<Scalar>(p.magnitude);
            }
        }
    }

    const TrussModel& model() const { return model_; }
    int free_count() const { return static_cast<int>(free_dofs_.size()); }
    const std::vector<int>& free_dofs() const { return free_dofs_; }
    const VectorX<Scalar>& lengths() const { return lengths_; }

    Scalar weight(const VectorX<Scalar>& areas) const {
        check_areas(areas);
        return (areas.array() * lengths_.array()).sum() * static_cast<Scalar>(model_.density);
    }

    /// Reduced global stiffness for the given member areas.
    MatrixX<Scalar> assemble(const VectorX<Scalar>& areas) const {
        check_areas(areas);
        const int dim = model_.dimension;
        MatrixX<Scalar> K = MatrixX<Scalar>::Zero(free_count(), free_count());
        for (int e = 0; e < model_.member_count(); ++e) {
            const Scalar k = static_cast<Scalar>(model_.elastic_modulus) * areas[e] / lengths_[e];
            const auto& md = member_dofs_[static_cast<std::size_t>(e)];
            // element vector (-c, +c); K_e = k * v v^T scattered over free DOFs
            for (int p = 0; p < 2 * dim; ++p) {
                const int ip = md[static_cast<std::size_t>(p)];
                if (ip < 0) continue;
                const Scalar vp = (p < dim ? -dirs_(e, p) : dirs_(e, p - dim));
                for (int q = 0; q < 2 * dim; ++q) {
                    const int iq = md[static_cast<std::size_t>(q)];
                    if (iq < 0) continue;
                    const Scalar vq = (q < dim ? -dirs_(e, q) : dirs_(e, q - dim));
                    K(ip, iq) += k * vp * vq;
                }
            }
        }
        return K;
    }

    /// Free-DOF displacements for one load vector. Throws on singular K or a
    /// bad equilibrium residual.
    VectorX<Scalar> solve(const VectorX<Scalar>& areas, const VectorX<Scalar>& f) const {
        const MatrixX<Scalar> K = assemble(areas);
        Eigen::LDLT<MatrixX<Scalar>> ldlt(K);
        if (ldlt.info() != Eigen::Success || ldlt.rcond() < static_cast<Scalar>(kRcondFloor))
            throw KinematicInstabilityError("stiffness matrix is singular or ill-conditioned");
        VectorX<Scalar> u = ldlt.solve(f);
        const Scalar fn = f.norm();
        if (fn > Scalar(0) && !((K * u - f).norm() <= static_cast<Scalar>(kEquilibriumTol) * fn))
            throw KinematicInstabilityError("equilibrium residual exceeds tolerance");
        return u;
    }

    VectorX<Scalar> solve_case(const VectorX<Scalar>& areas, int case_index) const {
        return solve(areas, loads_.at(static_cast<std::size_t>(case_index)));
    }

    /// Signed axial stresses (tension positive) from a free-DOF solution.
    VectorX<Scalar> stresses(const VectorX<Scalar>& u) const {
        const int dim = model_.dimension;
        VectorX<Scalar> s(model_.member_count());
        for (int e = 0; e < model_.member_count(); ++e) {
            const auto& md = member_dofs_[static_cast<std::size_t>(e)];
            Scalar elong = Scalar(0);
            for (int axis = 0; axis < dim; ++axis) {
                const int ia = md[static_cast<std::size_t>(axis)];
                const int ib = md[static_cast<std::size_t>(dim + axis)];
                const Scalar ua = ia >= 0 ? u[ia] : Scalar(0);
                const Scalar ub = ib >= 0 ? u[ib] : Scalar(0);
                elong += dirs_(e, axis) * (ub - ua);
            }
            s[e] = static_cast<Scalar>(model_.elastic_modulus) * elong / lengths_[e];
        }
        return s;
    }

    /// Full analysis: every load case, plus the weight.
    AnalysisResult analyze(const VectorX<Scalar>& areas) const {
        AnalysisResult r;
        r.weight = static_cast<double>(weight(areas));
        for (std::size_t c = 0; c < loads_.size(); ++c) {
            VectorX<Scalar> u = solve(areas, loads_[c]);
            r.displacements.push_back(u.template cast<double>());
            r.stresses.push_back(stresses(u).template cast<double>());
        }
        return r;
    }

private:
    void check_areas(const VectorX<Scalar>& areas) const {
        if (areas.size() != model_.member_count())
            throw InvalidDesignError("area vector length does not match member count");
        if (!(areas.array() > Scalar(0)).all())
            throw InvalidDesignError("non-positive member area");
    }

    TrussModel model_;
    std::vector<int> free_dofs_;
    std::vector<int> free_of_dof_;
    VectorX<Scalar> lengths_;
    MatrixX<Scalar> dirs_;
    std::vector<std::vector<int>> member_dofs_;
    std::vector<VectorX<Scalar>> loads_;
};

using Analyzer = AnalyzerT<double>;

/// One-shot spec operations, built on a throwaway analyzer.
inline Eigen::VectorXd assemble_and_solve(const TrussModel& model,
                                          const Eigen::VectorXd& areas,
                                          const LoadCase& lc) {
    TrussModel one = model;
    one.load_cases = {lc};
    Analyzer az(one);
    return az.solve_case(areas, 0);
}

inline Eigen::VectorXd member_stresses(const TrussModel& model,
                                       const Eigen::VectorXd& areas,
                                       const Eigen::VectorXd& u_free) {
    Analyzer az(model);
    (void)areas;
    return az.stresses(u_free);
}

inline AnalysisResult analyze(const TrussModel& model, const Eigen::VectorXd& areas) {
    return Analyzer(model).analyze(areas);
}

} // namespace truss

#endif
