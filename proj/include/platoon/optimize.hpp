#ifndef PLATOON_OPTIMIZE_HPP
#define PLATOON_OPTIMIZE_HPP

#include <cstdint>
#include <vector>

#include "platoon/objective.hpp"

namespace platoon {

struct RestartRecord {
    PotentialSpec best;
    double objective = 0.0;
    bool feasible = false;
    int evaluations = 0;
};

struct OptimizationResult {
    PotentialSpec best;
    double objective = 0.0;
    bool success = false;   // a feasible point was found
    bool box_ok = false;
    bool slope_ok = false;
    int evaluations = 0;
    std::vector<RestartRecord> history;
};

/// Multi-start downhill simplex over (alpha, r, p), box-scaled to the unit
/// cube, slope-constraint violations handled by an additive penalty.
/// Deterministic given the seed.
OptimizationResult optimize_parameters(const PlatoonState& initial, const ModelParams& params,
                                       const ObjectiveSpec& obj, const SimConfig& simcfg,
                                       int budget, int restarts, std::uint64_t seed);

}  // namespace platoon

#endif  // PLATOON_OPTIMIZE_HPP
