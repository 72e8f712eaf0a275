#ifndef PLATOON_CONFIG_HPP
#define PLATOON_CONFIG_HPP

#include <map>
#include <string>

#include "platoon/dataset.hpp"

namespace platoon {

/// Everything one CLI invocation needs, parsed from a dotted key = value
/// text file plus command-line overrides.
struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string model_path;    // trained network, for infer
    std::string dataset_path;  // dataset CSV, for train
    std::string dataset_meta_path;

    ModelParams model;
    PotentialSpec potential;
    SimConfig sim;
    ObjectiveSpec objective;
    DatasetSpec dataset;
    TrainConfig train;
    int opt_budget = 400;
    int opt_restarts = 4;

    void validate() const;
};

/// Named defaults for the two simulation scenarios: scenario1 runs the
/// legacy potential, scenario2 the tuned performance-sensitive one.
ExperimentConfig preset(const std::string& name);

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

/// Applies one `dotted.key=value` override.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

/// Seeded initial condition from the config's sampling ranges, honoring
/// the headway rule; leader at x = 0, stream 0 of the config seed.
PlatoonState initial_state_from_config(const ExperimentConfig& cfg);

}  // namespace platoon

#endif  // PLATOON_CONFIG_HPP
