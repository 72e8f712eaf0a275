#ifndef PLATOON_TYPES_HPP
#define PLATOON_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace platoon {

using Vec = Eigen::VectorXd;

/// Thrown when a numeric input violates its documented domain
/// (e.g. spacing below the minimum distance, non-positive epsilon).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Road and controller constants shared by every module.
struct ModelParams {
    double L = 5.0;        // minimum allowable inter-vehicle distance [m]
    double lambda = 20.0;  // repulsion cutoff distance [m]
    double v_star = 30.0;  // desired cruising speed [m/s]
    double v_max = 35.0;   // speed limit [m/s]
    double epsilon = 0.2;  // smoothing parameter of f
    double mu = 0.5;       // base controller gain [1/s]
    int n = 7;             // vehicle count

    void validate() const {
        if (!(L > 0.0 && L < lambda))
            throw DomainError("ModelParams: require 0 < L < lambda");
        if (!(v_star > 0.0 && v_star < v_max))
            throw DomainError("ModelParams: require 0 < v_star < v_max");
        if (!(epsilon > 0.0)) throw DomainError("ModelParams: epsilon must be positive");
        if (!(mu > 0.0)) throw DomainError("ModelParams: mu must be positive");
        if (n < 2) throw DomainError("ModelParams: need at least 2 vehicles");
    }
};

/// Positions and speeds of all n vehicles at one time instant.
/// Vehicle 1 (index 0) is the leader; positions decrease with index.
struct PlatoonState {
    double time = 0.0;
    Vec positions;  // x_i [m]
    Vec speeds;     // v_i [m/s]

    Eigen::Index size() const { return positions.size(); }

    /// Spacings s_i = x_{i-1} - x_i, i = 2..n (length n-1).
    Vec spacings() const {
        const Eigen::Index n = positions.size();
        Vec s(n - 1);
        for (Eigen::Index i = 1; i < n; ++i) s(i - 1) = positions(i - 1) - positions(i);
        return s;
    }
};

/// Result of a state-space membership test, carrying the violated bound.
struct OmegaReport {
    bool inside = true;
    std::string violation;  // empty when inside
};

/// Membership in the admissible set: all spacings > L, speeds in [0, v_max].
inline OmegaReport check_omega(const PlatoonState& state, const ModelParams& params) {
    OmegaReport rep;
    const Vec s = state.spacings();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (!(s(i) > params.L)) {
            rep.inside = false;
            rep.violation = "spacing s_" + std::to_string(i + 2) + " = " +
                            std::to_string(s(i)) + " <= L";
            return rep;
        }
    }
    for (Eigen::Index i = 0; i < state.speeds.size(); ++i) {
        const double v = state.speeds(i);
        if (!(v >= 0.0 && v <= params.v_max)) {
            rep.inside = false;
            rep.violation = "speed v_" + std::to_string(i + 1) + " = " +
                            std::to_string(v) + " outside [0, v_max]";
            return rep;
        }
    }
    return rep;
}

/// Strict interior variant used by the sampling-period certificates:
/// speeds in the open interval (0, v_max).
inline bool in_omega_strict(const PlatoonState& state, const ModelParams& params) {
    const Vec s = state.spacings();
    if ((s.array() <= params.L).any()) return false;
    return (state.speeds.array() > 0.0).all() &&
           (state.speeds.array() < params.v_max).all();
}

}  // namespace platoon

#endif  // PLATOON_TYPES_HPP
