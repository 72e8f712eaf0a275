#ifndef PLATOON_MLP_HPP
#define PLATOON_MLP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "platoon/objective.hpp"

namespace platoon {

using Mat = Eigen::MatrixXd;

/// Fully-connected regression network with ReLU hidden layers and a
/// linear output, plus the normalization statistics needed to map raw
/// platoon states to network inputs and network outputs back to
/// potential parameters.
struct MlpModel {
    std::vector<int> layer_sizes;      // e.g. {13, 32, 16, 3}
    std::vector<Mat> weights;          // weights[l]: layer_sizes[l+1] x layer_sizes[l]
    std::vector<Vec> biases;

    // Affine input map: x_norm = (x_raw - input_offset) / input_scale.
    Vec input_offset;
    Vec input_scale;
    // Min-max output map: y_raw = output_min + y_norm * (output_max - output_min).
    Vec output_min;
    Vec output_max;

    // Training metadata.
    double final_train_mse = 0.0;
    double final_val_mse = 0.0;
    double final_test_mse = 0.0;
    int epochs_run = 0;

    Vec forward(const Vec& normalized_input) const;

    Vec normalize_input(const Vec& raw) const {
        return (raw - input_offset).cwiseQuotient(input_scale);
    }
    Vec denormalize_output(const Vec& y) const {
        return output_min + y.cwiseProduct(output_max - output_min);
    }
};

/// Seeded symmetric-uniform initialization, +-sqrt(6/(fan_in+fan_out)).
MlpModel make_model(const std::vector<int>& layer_sizes, std::uint64_t seed);

struct TrainConfig {
    double learning_rate = 35e-6;
    int max_epochs = 2000;
    int patience = 50;          // epochs without validation improvement
    double target_mse = 1e-3;   // early stop once validation MSE drops below
    int batch_size = 32;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(learning_rate > 0.0) || max_epochs < 1 || patience < 1 ||
            !(target_mse > 0.0) || batch_size < 1)
            throw DomainError("TrainConfig: all fields must be positive");
    }
};

/// Normalized supervised rows, one sample per matrix row.
struct SplitData {
    Mat train_x, train_y;
    Mat val_x, val_y;
    Mat test_x, test_y;
};

struct TrainReport {
    int epochs_run = 0;
    double train_mse = 0.0;
    double val_mse = 0.0;
    // Best-so-far validation MSE after each epoch (non-increasing).
    std::vector<double> best_val_history;
};

/// Mini-batch gradient descent on the MSE via backpropagation; keeps and
/// returns the best-validation snapshot.  Throws if the loss diverges.
TrainReport train(MlpModel& model, const SplitData& data, const TrainConfig& cfg);

/// Mean squared error over rows, averaged over output coordinates.
double mse(const MlpModel& model, const Mat& x, const Mat& y);

/// De-normalized, box-clamped parameter prediction for a platoon state.
PotentialSpec predict(const MlpModel& model, const PlatoonState& state,
                      const ModelParams& params);

/// Max relative error between backpropagated gradients and central finite
/// differences of the single-sample MSE.
double gradient_check(const MlpModel& model, const Vec& input, const Vec& target);

void save_model(const MlpModel& model, const std::string& path);
MlpModel load_model(const std::string& path);

}  // namespace platoon

#endif  // PLATOON_MLP_HPP
