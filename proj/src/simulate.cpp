#include "platoon/simulate.hpp"

#include <algorithm>
#include <cmath>

namespace platoon {

PlatoonState step_exact(const PlatoonState& state, const ForceVector& forces, double T) {
    if (!(T > 0.0)) throw DomainError("step_exact: T must be positive");
    PlatoonState next = state;
    next.positions += T * state.speeds + (T * T / 2.0) * forces.forces;
    next.speeds += T * forces.forces;
    next.time += T;
    return next;
}

SafetyCertificate check_safe_step(const PlatoonState& state, const ForceVector& forces,
                                  double T, const ModelParams& params, int vehicle) {
    const OmegaReport omega = check_omega(state, params);
    if (!omega.inside)
        throw DomainError("check_safe_step: state outside Omega: " + omega.violation);
    const Eigen::Index n = state.size();
    if (vehicle < 1 || vehicle > n)
        throw DomainError("check_safe_step: vehicle index out of range");

    const Vec s = state.spacings();
    // Vehicle i has front gap s_i (i >= 2) and rear gap s_{i+1} (i <= n-1);
    // the missing neighbor term is dropped at the ends.
    double min_gap = std::numeric_limits<double>::infinity();
    if (vehicle >= 2) min_gap = std::min(min_gap, s(vehicle - 2));
    if (vehicle <= n - 1) min_gap = std::min(min_gap, s(vehicle - 1));

    SafetyCertificate cert;
    cert.vehicle = vehicle;
    cert.max_admissible_T = (min_gap - params.L) / params.v_max;
    cert.spacing_ok = T < cert.max_admissible_T;
    const double v = state.speeds(vehicle - 1);
    const double F = forces.forces(vehicle - 1);
    cert.force_lo = -v / T;
    cert.force_hi = (params.v_max - v) / T;
    cert.force_ok = cert.force_lo < F && F < cert.force_hi;
    return cert;
}

namespace {

TrajectoryRow make_row(const PlatoonState& state, const ForceVector& fv) {
    TrajectoryRow row;
    row.time = state.time;
    row.positions = state.positions;
    row.speeds = state.speeds;
    row.spacings = state.spacings();
    row.forces = fv.forces;
    row.gains = fv.gains;
    return row;
}

// Continuous-feedback derivative for the RK4 reference integrator.
struct Derivative {
    Vec dx;
    Vec dv;
};

Derivative dynamics(const PlatoonState& state, const ModelParams& params,
                    const PotentialSpec& potential) {
    const ForceVector fv = feedback_forces(state, params, potential);
    return {state.speeds, fv.forces};
}

PlatoonState rk4_step(const PlatoonState& state, const ModelParams& params,
                      const PotentialSpec& potential, double h) {
    auto shift = [&](const Derivative& d, double c) {
        PlatoonState s = state;
        s.positions += c * d.dx;
        s.speeds += c * d.dv;
        s.time += c;
        return s;
    };
    const Derivative k1 = dynamics(state, params, potential);
    const Derivative k2 = dynamics(shift(k1, h / 2.0), params, potential);
    const Derivative k3 = dynamics(shift(k2, h / 2.0), params, potential);
    const Derivative k4 = dynamics(shift(k3, h), params, potential);
    PlatoonState next = state;
    next.positions += (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    next.speeds += (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv);
    next.time += h;
    return next;
}

}  // namespace

Trajectory simulate(const PlatoonState& initial, const ModelParams& params,
                    const PotentialSpec& potential, const SimConfig& config) {
    config.validate();
    params.validate();
    {
        const OmegaReport omega = check_omega(initial, params);
        if (!omega.inside)
            throw DomainError("simulate: initial state outside Omega: " + omega.violation);
    }

    const long steps = std::lround((config.tf - config.t0) / config.T);
    Trajectory traj;
    traj.rows.reserve(static_cast<size_t>(steps / config.record_stride) + 2);

    PlatoonState state = initial;
    state.time = config.t0;
    for (long k = 0; k < steps; ++k) {
        const ForceVector fv = feedback_forces(state, params, potential);
        if (k % config.record_stride == 0) traj.rows.push_back(make_row(state, fv));

        if (config.mode == SimMode::ExactZOH) {
            state = step_exact(state, fv, config.T);
        } else {
            const double h = config.T / config.rk4_substeps;
            for (int j = 0; j < config.rk4_substeps; ++j)
                state = rk4_step(state, params, potential, h);
        }

        const OmegaReport omega = check_omega(state, params);
        if (!omega.inside) {
            TrajectoryRow row;
            row.time = state.time;
            row.positions = state.positions;
            row.speeds = state.speeds;
            row.spacings = state.spacings();
            row.forces = Vec::Zero(state.size());
            row.gains = Vec::Zero(state.size());
            traj.rows.push_back(row);
            traj.exited_omega = true;
            traj.omega_violation = omega.violation;
            return traj;
        }
    }
    traj.rows.push_back(make_row(state, feedback_forces(state, params, potential)));
    return traj;
}

CertifiedHorizon max_certified_horizon(const PlatoonState& initial, const ModelParams& params,
                                       const PotentialSpec& potential, double T, long steps) {
    params.validate();
    {
        const OmegaReport omega = check_omega(initial, params);
        if (!omega.inside)
            throw DomainError("max_certified_horizon: initial state outside Omega: " +
                              omega.violation);
    }
    PlatoonState state = initial;
    CertifiedHorizon out;
    for (long k = 0; k < steps; ++k) {
        const ForceVector fv = feedback_forces(state, params, potential);
        for (int i = 1; i <= state.size(); ++i) {
            const SafetyCertificate cert = check_safe_step(state, fv, T, params, i);
            if (!cert.passed()) {
                out.first_failure = cert;
                return out;
            }
        }
        state = step_exact(state, fv, T);
        if (!check_omega(state, params).inside) return out;
        ++out.certified_steps;
    }
    return out;
}

}  // namespace platoon
