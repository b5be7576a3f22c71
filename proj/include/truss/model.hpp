#ifndef TRUSS_MODEL_HPP
#define TRUSS_MODEL_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace truss {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Geometry-level defects: coincident nodes, bad indices, ...
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

/// Design vectors that violate preconditions (non-positive areas, bad index).
class InvalidDesignError : public Error {
public:
    using Error::Error;
};

/// Singular or near-singular stiffness (mechanism / unstable structure).
class KinematicInstabilityError : public Error {
public:
    using Error::Error;
};

/// Problem-file schema violations; message names the offending field.
class LoadFileError : public Error {
public:
    using Error::Error;
};

struct PointLoad {
    int node = 0;
    int axis = 0;
    double magnitude = 0.0;
};

struct LoadCase {
    std::vector<PointLoad> loads;
};

struct Member {
    int a = 0;
    int b = 0;
    int group = 0;
};

/// One pin-jointed structure: geometry, topology, supports, material and the
/// loads it must carry. Coordinates/areas/forces are in whatever consistent
/// unit system the problem declares; the solver never converts units.
struct TrussModel {
    int dimension = 2;                       // 2 or 3
    Eigen::MatrixXd nodes;                   // n x dimension
    std::vector<Member> members;
    std::vector<std::pair<int, int>> supports;  // (node, axis), fixed DOFs
    double elastic_modulus = 0.0;
    double density = 0.0;
    std::vector<LoadCase> load_cases;

    int node_count() const { return static_cast<int>(nodes.rows()); }
    int member_count() const { return static_cast<int>(members.size()); }
    int dof_count() const { return node_count() * dimension; }

    int group_count() const {
        int g = 0;
        for (const auto& m : members) g = std::max(g, m.group + 1);
        return g;
    }

    bool is_fixed(int node, int axis) const {
        for (const auto& s : supports)
            if (s.first == node && s.second == axis) return true;
        return false;
    }

    /// Structural sanity checks (spec invariants). Throws on violation.
    void validate() const {
        if (dimension != 2 && dimension != 3)
            throw DegenerateGeometryError("dimension must be 2 or 3");
        if (nodes.cols() != dimension)
            throw DegenerateGeometryError("node coordinate arity does not match dimension");
        const int n = node_count();
        const int g = group_count();
        for (const auto& m : members) {
            if (m.a < 0 || m.a >= n || m.b < 0 || m.b >= n)
                throw DegenerateGeometryError("member references a missing node");
            if (m.a == m.b)
                throw DegenerateGeometryError("member connects a node to itself");
            if ((nodes.row(m.a) - nodes.row(m.b)).norm() <= 0.0)
                throw DegenerateGeometryError("zero-length member");
            if (m.group < 0 || m.group >= g)
                throw DegenerateGeometryError("member group index out of range");
        }
        for (const auto& s : supports) {
            if (s.first < 0 || s.first >= n || s.second < 0 || s.second >= dimension)
                throw DegenerateGeometryError("support references a missing node or axis");
        }
        for (const auto& lc : load_cases) {
            for (const auto& p : lc.loads) {
                if (p.node < 0 || p.node >= n || p.axis < 0 || p.axis >= dimension)
                    throw LoadFileError("load references a missing node or axis");
                if (is_fixed(p.node, p.axis))
                    throw LoadFileError("load applied on a fully fixed DOF");
            }
        }
    }
};

/// Per-load-case response plus the design weight. Displacement vectors hold
/// the free DOFs only, ordered as Analyzer::free_dofs().
struct AnalysisResult {
    std::vector<Eigen::VectorXd> displacements;
    std::vector<Eigen::VectorXd> stresses;  // one signed value per member
    double weight = 0.0;
};

} // namespace truss

#endif
