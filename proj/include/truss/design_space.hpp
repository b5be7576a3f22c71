#ifndef TRUSS_DESIGN_SPACE_HPP
#define TRUSS_DESIGN_SPACE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "truss/model.hpp"

namespace truss {

enum class Mode { Continuous, Discrete };

inline const char* to_string(Mode m) { return m == Mode::Continuous ? "continuous" : "discrete"; }

/// Design variables: grouping of members onto variables, box bounds, and the
/// optional admissible discrete section set S (sorted ascending).
struct DesignSpace {
    int variables = 0;
    std::vector<int> group_map;        // member index -> variable index
    Eigen::VectorXd lower;             // per variable
    Eigen::VectorXd upper;
    std::vector<double> discrete_set;  // empty when the problem is continuous-only

    bool has_discrete() const { return !discrete_set.empty(); }

    void validate() const {
        if (variables <= 0) throw InvalidDesignError("design space needs at least one variable");
        if (lower.size() != variables || upper.size() != variables)
            throw InvalidDesignError("bounds length does not match variable count");
        for (int j = 0; j < variables; ++j)
            if (!(lower[j] < upper[j])) throw InvalidDesignError("lower bound must be below upper bound");
        std::vector<bool> seen(static_cast<std::size_t>(variables), false);
        for (int g : group_map) {
            if (g < 0 || g >= variables) throw InvalidDesignError("group map entry out of range");
            seen[static_cast<std::size_t>(g)] = true;
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
            throw InvalidDesignError("group map does not cover every variable");
        if (has_discrete()) {
            for (std::size_t i = 1; i < discrete_set.size(); ++i)
                if (!(discrete_set[i - 1] < discrete_set[i]))
                    throw InvalidDesignError("discrete set must be strictly increasing");
            for (int j = 0; j < variables; ++j)
                if (lower[j] != discrete_set.front() || upper[j] != discrete_set.back())
                    throw InvalidDesignError("bounds must equal the discrete set extremes");
        }
    }

    /// Index of the S entry nearest to `value`; ties resolve to the lower index.
    int nearest_index(double value) const {
        const auto& s = discrete_set;
        auto it = std::lower_bound(s.begin(), s.end(), value);
        if (it == s.begin()) return 0;
        if (it == s.end()) return static_cast<int>(s.size()) - 1;
        const auto hi = static_cast<int>(it - s.begin());
        const int lo = hi - 1;
        return (value - s[static_cast<std::size_t>(lo)] <= s[static_cast<std::size_t>(hi)] - value)
                   ? lo
                   : hi;
    }

    /// Exact S index of a stored discrete value (1e-9 relative), or -1.
    int exact_index(double value) const {
        const int k = nearest_index(value);
        const double s = discrete_set[static_cast<std::size_t>(k)];
        return std::abs(value - s) <= 1e-9 * std::max(1.0, std::abs(s)) ? k : -1;
    }

    /// Expand a continuous variable vector (clamped into bounds) to one area
    /// per member.
    Eigen::VectorXd decode_continuous(const Eigen::VectorXd& x) const {
        if (x.size() != variables) throw InvalidDesignError("design vector length mismatch");
        Eigen::VectorXd v = x.cwiseMax(lower).cwiseMin(upper);
        Eigen::VectorXd areas(group_map.size());
        for (std::size_t e = 0; e < group_map.size(); ++e)
            areas[static_cast<Eigen::Index>(e)] = v[group_map[e]];
        return areas;
    }

    /// Expand a vector of S indices to one exact area per member.
    Eigen::VectorXd decode_discrete(const std::vector<int>& idx) const {
        if (!has_discrete()) throw InvalidDesignError("problem has no discrete set");
        if (static_cast<int>(idx.size()) != variables)
            throw InvalidDesignError("design vector length mismatch");
        Eigen::VectorXd areas(group_map.size());
        for (std::size_t e = 0; e < group_map.size(); ++e) {
            const int k = idx[static_cast<std::size_t>(group_map[e])];
            if (k < 0 || k >= static_cast<int>(discrete_set.size()))
                throw InvalidDesignError("discrete index outside the section set");
            areas[static_cast<Eigen::Index>(e)] = discrete_set[static_cast<std::size_t>(k)];
        }
        return areas;
    }

    /// Variable values (not per-member expansion) for a set of indices.
    Eigen::VectorXd values_of(const std::vector<int>& idx) const {
        Eigen::VectorXd v(variables);
        for (int j = 0; j < variables; ++j) {
            const int k = idx[static_cast<std::size_t>(j)];
            if (k < 0 || k >= static_cast<int>(discrete_set.size()))
                throw InvalidDesignError("discrete index outside the section set");
            v[j] = discrete_set[static_cast<std::size_t>(k)];
        }
        return v;
    }

    /// Snap a continuous variable vector onto S, returning indices.
    std::vector<int> snap(const Eigen::VectorXd& x) const {
        std::vector<int> idx(static_cast<std::size_t>(variables));
        for (int j = 0; j < variables; ++j)
            idx[static_cast<std::size_t>(j)] =
                nearest_index(std::clamp(x[j], lower[j], upper[j]));
        return idx;
    }
};

} // namespace truss

#endif
