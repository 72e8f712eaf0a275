#ifndef PLATOON_OBJECTIVE_HPP
#define PLATOON_OBJECTIVE_HPP

#include "platoon/simulate.hpp"

namespace platoon {

/// Weighted acceleration/spacing objective over a simulated horizon.
struct ObjectiveSpec {
    double w1 = 0.5;            // acceleration weight
    double w2 = 0.5;            // spacing weight
    double z = 4.0;             // slope threshold on the hill [m/s^2]
    double accel_norm = 5.0;    // normalization for v-dot [m/s^2]
    double spacing_norm = 20.0; // normalization for s [m]

    void validate() const {
        if (w1 < 0.0 || w2 < 0.0 || (w1 == 0.0 && w2 == 0.0))
            throw DomainError("ObjectiveSpec: weights must be nonnegative, not both zero");
        if (!(z > 0.0)) throw DomainError("ObjectiveSpec: z must be positive");
        if (!(accel_norm > 0.0 && spacing_norm > 0.0))
            throw DomainError("ObjectiveSpec: normalization scales must be positive");
    }
};

struct FeasibilityReport {
    bool alpha_ok = false;
    bool r_ok = false;
    bool p_ok = false;
    double max_slope = 0.0;  // over the hill window
    bool slope_ok = false;
    bool box_ok() const { return alpha_ok && r_ok && p_ok; }
    bool feasible() const { return box_ok() && slope_ok; }
};

/// Parameter feasibility box.
inline constexpr double kAlphaMin = 1e-3;
inline constexpr double kAlphaMax = 1e-1;
inline constexpr double kPMin = 3.0;
inline constexpr double kPMax = 9.0;

/// Box constraints plus the numeric slope check on the hill window.
FeasibilityReport check_feasible(const PotentialSpec& spec, const ObjectiveSpec& obj);

struct ObjectiveValue {
    double value = 0.0;
    bool omega_violation = false;  // rollout left the admissible set (penalized)
};

/// w1 * integral of sum (F_i/accel_norm)^2 + w2 * integral of sum
/// (s_i/spacing_norm), trapezoidal quadrature on the recorded rows.
ObjectiveValue evaluate_objective(const PlatoonState& initial, const ModelParams& params,
                                  const PotentialSpec& spec, const ObjectiveSpec& obj,
                                  const SimConfig& simcfg);

}  // namespace platoon

#endif  // PLATOON_OBJECTIVE_HPP
