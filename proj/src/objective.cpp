#include "platoon/objective.hpp"

namespace platoon {

FeasibilityReport check_feasible(const PotentialSpec& spec, const ObjectiveSpec& obj) {
    FeasibilityReport rep;
    rep.alpha_ok = spec.alpha >= kAlphaMin && spec.alpha <= kAlphaMax;
    rep.r_ok = spec.r > spec.L && spec.r <= spec.lambda - kHillWidth;
    rep.p_ok = spec.p >= kPMin && spec.p <= kPMax;
    if (rep.box_ok()) {
        rep.max_slope = max_abs_slope_on_hill(spec).value;
        rep.slope_ok = rep.max_slope <= obj.z;
    }
    return rep;
}

ObjectiveValue evaluate_objective(const PlatoonState& initial, const ModelParams& params,
                                  const PotentialSpec& spec, const ObjectiveSpec& obj,
                                  const SimConfig& simcfg) {
    obj.validate();
    {
        const FeasibilityReport box = check_feasible(spec, obj);
        if (spec.kind == PotentialKind::PerformanceSensitive && !box.box_ok())
            throw DomainError("evaluate_objective: spec outside the feasibility box");
    }

    const Trajectory traj = simulate(initial, params, spec, simcfg);

    ObjectiveValue out;
    if (traj.exited_omega) {
        out.omega_violation = true;
        out.value = 1e9;
        return out;
    }

    auto integrand = [&](const TrajectoryRow& row) {
        const double accel = (row.forces / obj.accel_norm).squaredNorm();
        const double spacing = (row.spacings / obj.spacing_norm).sum();
        return obj.w1 * accel + obj.w2 * spacing;
    };

    double integral = 0.0;
    for (size_t k = 1; k < traj.rows.size(); ++k) {
        const double dt = traj.rows[k].time - traj.rows[k - 1].time;
        integral += 0.5 * dt * (integrand(traj.rows[k - 1]) + integrand(traj.rows[k]));
    }
    out.value = integral;
    return out;
}

}  // namespace platoon
