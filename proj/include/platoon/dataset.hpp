#ifndef PLATOON_DATASET_HPP
#define PLATOON_DATASET_HPP

#include <random>

#include "platoon/mlp.hpp"
#include "platoon/optimize.hpp"

namespace platoon {

struct DatasetSpec {
    int count = 6000;
    int n = 7;
    double spacing_lo = 8.0, spacing_hi = 12.0;    // [m]
    double speed_lo = 27.0, speed_hi = 33.0;       // [m/s]
    double standstill = 5.0;                       // s-bar [m]
    double headway = 0.1;                          // rho [s]
    double train_frac = 0.85, val_frac = 0.075, test_frac = 0.075;
    std::uint64_t seed = 0;

    void validate() const {
        if (count < 1 || n < 2) throw DomainError("DatasetSpec: count and n must be positive");
        if (!(spacing_hi > spacing_lo) || !(speed_hi > speed_lo))
            throw DomainError("DatasetSpec: empty sampling range");
        if (std::abs(train_frac + val_frac + test_frac - 1.0) > 1e-9)
            throw DomainError("DatasetSpec: split fractions must sum to 1");
    }
};

/// Normalized supervised rows: inputs are range-normalized spacings and
/// speeds, targets are box-normalized (alpha, r, p).
struct Dataset {
    DatasetSpec spec;
    Mat inputs;   // count x (2n-1)
    Mat targets;  // count x 3
    int dropped = 0;  // samples lost to optimizer failure
};

/// Samples admissible initial conditions, solves the parameter
/// optimization for each, and emits normalized rows.  Deterministic given
/// the dataset seed.
Dataset generate_dataset(const DatasetSpec& dspec, const ModelParams& params,
                         const ObjectiveSpec& obj, const SimConfig& simcfg,
                         int budget, int restarts);

/// Draws one admissible initial condition (leader at x = 0).
PlatoonState sample_initial_state(const DatasetSpec& dspec, std::mt19937_64& rng);

/// Split by the spec's fractions, in row order (rows are already i.i.d.).
SplitData split_dataset(const Dataset& data);

/// Affine maps between raw units and the normalized rows.
Vec input_offset_vector(const DatasetSpec& dspec);
Vec input_scale_vector(const DatasetSpec& dspec);
Vec target_min_vector(const ModelParams& params);
Vec target_max_vector(const ModelParams& params);

void save_dataset(const Dataset& data, const std::string& csv_path,
                  const std::string& meta_path);
Dataset load_dataset(const std::string& csv_path, const std::string& meta_path);

}  // namespace platoon

#endif  // PLATOON_DATASET_HPP
