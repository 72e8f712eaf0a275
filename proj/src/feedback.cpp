#include "platoon/feedback.hpp"

namespace platoon {

double f_smooth(double x, double epsilon) {
    if (!(epsilon > 0.0)) throw DomainError("f_smooth: epsilon must be positive");
    if (x <= -epsilon) return 0.0;
    if (x < 0.0) {
        const double t = x + epsilon;
        return t * t / (2.0 * epsilon);
    }
    return (epsilon * epsilon + 2.0 * epsilon * x) / (2.0 * epsilon);
}

double g_gain(double x, const ModelParams& params) {
    return params.v_max * f_smooth(x, params.epsilon) /
               (params.v_star * (params.v_max - params.v_star)) -
           x / params.v_star;
}

ForceVector feedback_forces(const PlatoonState& state, const ModelParams& params,
                            const PotentialSpec& potential) {
    params.validate();
    const OmegaReport omega = check_omega(state, params);
    if (!omega.inside) throw DomainError("feedback_forces: state outside Omega: " + omega.violation);

    const Eigen::Index n = state.size();
    const Vec s = state.spacings();

    // vp(i) = V'(s_{i+2}) for i = 0..n-2 (spacing between vehicle i+1 and i+2).
    Vec vp(n - 1);
    for (Eigen::Index i = 0; i < n - 1; ++i) vp(i) = v_prime(s(i), potential);

    ForceVector out;
    out.forces.resize(n);
    out.gains.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        // Potential contribution: +V'(front gap) - V'(rear gap), missing
        // terms dropped at the ends.
        const double front = (i > 0) ? vp(i - 1) : 0.0;
        const double rear = (i < n - 1) ? vp(i) : 0.0;
        const double k = params.mu + g_gain(front - rear, params);
        out.gains(i) = k;
        out.forces(i) = -k * (state.speeds(i) - params.v_star) + front - rear;
    }
    return out;
}

}  // namespace platoon
