#ifndef PLATOON_IO_HPP
#define PLATOON_IO_HPP

#include <string>

#include "platoon/optimize.hpp"
#include "platoon/simulate.hpp"

namespace platoon {

/// Writes rows with header t,x_1..x_n,v_1..v_n,s_2..s_n,F_1..F_n,k_1..k_n.
/// A rollout that left the admissible set gets a trailing comment line
/// flagging the partial output.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// One curve per vehicle (or gap) against time, emitted as a standalone SVG.
void write_timeseries_svg(const Trajectory& traj, const std::string& path,
                          const std::string& quantity, const std::string& y_label);

/// Structured optimization report with a format-version line.
void write_optimization_report(const OptimizationResult& result, const std::string& path);
OptimizationResult read_optimization_report(const std::string& path,
                                            const ModelParams& params);

}  // namespace platoon

#endif  // PLATOON_IO_HPP
