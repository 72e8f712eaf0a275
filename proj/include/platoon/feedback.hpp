#ifndef PLATOON_FEEDBACK_HPP
#define PLATOON_FEEDBACK_HPP

#include "platoon/potential.hpp"
#include "platoon/types.hpp"

namespace platoon {

/// Feedback accelerations and the state-dependent gains used to form them.
struct ForceVector {
    Vec forces;  // F_i [m/s^2]
    Vec gains;   // k_i [1/s], each >= mu
};

/// Piecewise-quadratic smoothing of max(x, 0).
double f_smooth(double x, double epsilon);

/// Speed-protection gain term: v_max f(x) / (v* (v_max - v*)) - x / v*.
/// Nonnegative for all x.
double g_gain(double x, const ModelParams& params);

/// Decentralized feedback law: leader repelled by its follower, interior
/// vehicles by both neighbors, tail by its predecessor.  The state must
/// lie in the admissible set.
ForceVector feedback_forces(const PlatoonState& state, const ModelParams& params,
                            const PotentialSpec& potential);

}  // namespace platoon

#endif  // PLATOON_FEEDBACK_HPP
