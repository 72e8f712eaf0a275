#ifndef PLATOON_SIMULATE_HPP
#define PLATOON_SIMULATE_HPP

#include <optional>
#include <vector>

#include "platoon/feedback.hpp"

namespace platoon {

enum class SimMode { ExactZOH, ReferenceRK4 };

struct SimConfig {
    double T = 0.01;          // sampling period [s]
    double t0 = 0.0;
    double tf = 60.0;
    int record_stride = 1;    // record every k-th step
    SimMode mode = SimMode::ExactZOH;
    int rk4_substeps = 1;

    void validate() const {
        if (!(T > 0.0)) throw DomainError("SimConfig: T must be positive");
        if (!(tf > t0)) throw DomainError("SimConfig: tf must exceed t0");
        if (record_stride < 1) throw DomainError("SimConfig: record_stride must be >= 1");
        if (rk4_substeps < 1) throw DomainError("SimConfig: rk4_substeps must be >= 1");
    }
};

/// One recorded instant of a rollout.
struct TrajectoryRow {
    double time = 0.0;
    Vec positions;
    Vec speeds;
    Vec spacings;
    Vec forces;
    Vec gains;
};

struct Trajectory {
    std::vector<TrajectoryRow> rows;
    bool exited_omega = false;      // rollout halted early
    std::string omega_violation;    // which bound failed, when flagged
};

/// Lemma-style certificate that one held-force step keeps a vehicle's
/// spacings above L and its speed inside (0, v_max).
struct SafetyCertificate {
    int vehicle = 0;                  // 1-based
    bool spacing_ok = false;          // T below the spacing bound
    bool force_ok = false;            // F inside the admissible interval
    double max_admissible_T = 0.0;    // min(adjacent s - L) / v_max
    double force_lo = 0.0;            // -v_i / T
    double force_hi = 0.0;            // (v_max - v_i) / T
    bool passed() const { return spacing_ok && force_ok; }
};

/// Exact zero-order-hold step: forces held constant over [t, t+T).
PlatoonState step_exact(const PlatoonState& state, const ForceVector& forces, double T);

/// Certificate for vehicle i (1-based) at the given state and held force.
SafetyCertificate check_safe_step(const PlatoonState& state, const ForceVector& forces,
                                  double T, const ModelParams& params, int vehicle);

/// Closed-loop rollout.  ExactZOH holds the feedback over each period;
/// ReferenceRK4 re-evaluates it inside classical RK4 substeps and serves
/// as a continuous-feedback reference.  Halts early with a flagged row if
/// the state leaves the admissible set.
Trajectory simulate(const PlatoonState& initial, const ModelParams& params,
                    const PotentialSpec& potential, const SimConfig& config);

struct CertifiedHorizon {
    long certified_steps = 0;
    std::optional<SafetyCertificate> first_failure;
};

/// Runs an ExactZOH rollout checking every vehicle's certificate before
/// each step; returns how many consecutive steps were fully certified.
CertifiedHorizon max_certified_horizon(const PlatoonState& initial, const ModelParams& params,
                                       const PotentialSpec& potential, double T, long steps);

}  // namespace platoon

#endif  // PLATOON_SIMULATE_HPP
