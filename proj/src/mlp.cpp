#include "platoon/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "platoon/rng.hpp"

namespace platoon {

Vec MlpModel::forward(const Vec& normalized_input) const {
    Vec h = normalized_input;
    for (size_t l = 0; l < weights.size(); ++l) {
        h = weights[l] * h + biases[l];
        if (l + 1 < weights.size()) h = h.cwiseMax(0.0);  // ReLU on hidden layers
    }
    return h;
}

MlpModel make_model(const std::vector<int>& layer_sizes, std::uint64_t seed) {
    if (layer_sizes.size() < 2) throw DomainError("make_model: need at least two layers");
    MlpModel m;
    m.layer_sizes = layer_sizes;
    auto rng = seeded_stream(seed, 0);
    for (size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        const int fan_in = layer_sizes[l];
        const int fan_out = layer_sizes[l + 1];
        const double bound = std::sqrt(6.0 / (fan_in + fan_out));
        std::uniform_real_distribution<double> dist(-bound, bound);
        Mat w(fan_out, fan_in);
        for (int i = 0; i < fan_out; ++i)
            for (int j = 0; j < fan_in; ++j) w(i, j) = dist(rng);
        m.weights.push_back(std::move(w));
        m.biases.push_back(Vec::Zero(fan_out));
    }
    const int in = layer_sizes.front();
    const int out = layer_sizes.back();
    m.input_offset = Vec::Zero(in);
    m.input_scale = Vec::Ones(in);
    m.output_min = Vec::Zero(out);
    m.output_max = Vec::Ones(out);
    return m;
}

namespace {

struct Gradients {
    std::vector<Mat> w;
    std::vector<Vec> b;
};

Gradients zero_like(const MlpModel& m) {
    Gradients g;
    for (size_t l = 0; l < m.weights.size(); ++l) {
        g.w.push_back(Mat::Zero(m.weights[l].rows(), m.weights[l].cols()));
        g.b.push_back(Vec::Zero(m.biases[l].size()));
    }
    return g;
}

// Single-sample squared error, averaged over output coordinates, and its
// parameter gradients accumulated into g.
double backprop_sample(const MlpModel& m, const Vec& x, const Vec& y, Gradients& g) {
    const size_t layers = m.weights.size();
    std::vector<Vec> activations(layers + 1);  // post-activation, [0] = input
    std::vector<Vec> pre(layers);              // pre-activation
    activations[0] = x;
    for (size_t l = 0; l < layers; ++l) {
        pre[l] = m.weights[l] * activations[l] + m.biases[l];
        activations[l + 1] = (l + 1 < layers) ? pre[l].cwiseMax(0.0).eval() : pre[l];
    }
    const Vec err = activations[layers] - y;
    const double out_dim = static_cast<double>(y.size());
    const double loss = err.squaredNorm() / out_dim;

    Vec delta = (2.0 / out_dim) * err;  // d loss / d output pre-activation
    for (size_t l = layers; l-- > 0;) {
        g.w[l] += delta * activations[l].transpose();
        g.b[l] += delta;
        if (l > 0) {
            delta = (m.weights[l].transpose() * delta).eval();
            for (Eigen::Index i = 0; i < delta.size(); ++i)
                if (pre[l - 1](i) <= 0.0) delta(i) = 0.0;
        }
    }
    return loss;
}

}  // namespace

double mse(const MlpModel& model, const Mat& x, const Mat& y) {
    if (x.rows() == 0) return 0.0;
    double total = 0.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Vec err = model.forward(x.row(i).transpose()) - y.row(i).transpose();
        total += err.squaredNorm() / static_cast<double>(y.cols());
    }
    return total / static_cast<double>(x.rows());
}

TrainReport train(MlpModel& model, const SplitData& data, const TrainConfig& cfg) {
    cfg.validate();
    if (data.train_x.rows() == 0) throw DomainError("train: empty training set");
    const bool have_val = data.val_x.rows() > 0;

    auto rng = seeded_stream(cfg.seed, 1);
    std::vector<Eigen::Index> order(static_cast<size_t>(data.train_x.rows()));
    std::iota(order.begin(), order.end(), 0);

    MlpModel best = model;
    double best_val = have_val ? mse(model, data.val_x, data.val_y)
                               : mse(model, data.train_x, data.train_y);
    int epochs_since_improvement = 0;

    TrainReport report;
    for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t start = 0; start < order.size(); start += cfg.batch_size) {
            const size_t end = std::min(order.size(), start + cfg.batch_size);
            Gradients g = zero_like(model);
            for (size_t k = start; k < end; ++k) {
                const Eigen::Index i = order[k];
                backprop_sample(model, data.train_x.row(i).transpose(),
                                data.train_y.row(i).transpose(), g);
            }
            const double scale = cfg.learning_rate / static_cast<double>(end - start);
            for (size_t l = 0; l < model.weights.size(); ++l) {
                model.weights[l] -= scale * g.w[l];
                model.biases[l] -= scale * g.b[l];
            }
        }
        report.epochs_run = epoch + 1;

        const double val = have_val ? mse(model, data.val_x, data.val_y)
                                    : mse(model, data.train_x, data.train_y);
        if (!std::isfinite(val))
            throw DomainError("train: loss diverged at epoch " + std::to_string(epoch + 1));
        if (val < best_val) {
            best_val = val;
            best = model;
            epochs_since_improvement = 0;
        } else {
            ++epochs_since_improvement;
        }
        report.best_val_history.push_back(best_val);

        if (best_val < cfg.target_mse) break;
        if (epochs_since_improvement >= cfg.patience) break;
    }

    model = best;
    report.train_mse = mse(model, data.train_x, data.train_y);
    report.val_mse = best_val;
    model.final_train_mse = report.train_mse;
    model.final_val_mse = best_val;
    model.epochs_run = report.epochs_run;
    return report;
}

PotentialSpec predict(const MlpModel& model, const PlatoonState& state,
                      const ModelParams& params) {
    const Eigen::Index n = state.size();
    const Eigen::Index in_dim = model.layer_sizes.front();
    if (2 * n - 1 != in_dim)
        throw DomainError("predict: state has " + std::to_string(2 * n - 1) +
                          " features, model expects " + std::to_string(in_dim));
    Vec raw(in_dim);
    raw.head(n - 1) = state.spacings();
    raw.tail(n) = state.speeds;

    const Vec y = model.denormalize_output(model.forward(model.normalize_input(raw)));

    PotentialSpec spec;
    spec.kind = PotentialKind::PerformanceSensitive;
    spec.L = params.L;
    spec.lambda = params.lambda;
    spec.alpha = std::clamp(y(0), kAlphaMin, kAlphaMax);
    spec.r = std::clamp(y(1), std::nextafter(params.L, params.lambda),
                        params.lambda - kHillWidth);
    spec.p = std::clamp(y(2), kPMin, kPMax);
    return spec;
}

double gradient_check(const MlpModel& model, const Vec& input, const Vec& target) {
    Gradients g = zero_like(model);
    backprop_sample(model, input, target, g);

    MlpModel probe = model;
    const double h = 1e-5;
    auto loss_at = [&]() {
        const Vec err = probe.forward(input) - target;
        return err.squaredNorm() / static_cast<double>(target.size());
    };

    double max_rel = 0.0;
    auto compare = [&](double analytic, double& param) {
        const double saved = param;
        param = saved + h;
        const double lp = loss_at();
        param = saved - h;
        const double lm = loss_at();
        param = saved;
        const double fd = (lp - lm) / (2.0 * h);
        const double rel = std::abs(analytic - fd) / std::max(1e-8, std::abs(analytic) + std::abs(fd));
        max_rel = std::max(max_rel, rel);
    };

    for (size_t l = 0; l < probe.weights.size(); ++l) {
        for (Eigen::Index i = 0; i < probe.weights[l].rows(); ++i)
            for (Eigen::Index j = 0; j < probe.weights[l].cols(); ++j)
                compare(g.w[l](i, j), probe.weights[l](i, j));
        for (Eigen::Index i = 0; i < probe.biases[l].size(); ++i)
            compare(g.b[l](i), probe.biases[l](i));
    }
    return max_rel;
}

namespace {

void write_vec(std::ostream& os, const std::string& name, const Vec& v) {
    os << name;
    for (Eigen::Index i = 0; i < v.size(); ++i) os << ' ' << v(i);
    os << '\n';
}

Vec read_vec(std::istream& is, Eigen::Index size) {
    Vec v(size);
    for (Eigen::Index i = 0; i < size; ++i) is >> v(i);
    return v;
}

}  // namespace

void save_model(const MlpModel& model, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw DomainError("save_model: cannot open " + path);
    os.precision(17);
    os << "platoon-mlp 1\n";
    os << "layers";
    for (int s : model.layer_sizes) os << ' ' << s;
    os << '\n';
    write_vec(os, "input_offset", model.input_offset);
    write_vec(os, "input_scale", model.input_scale);
    write_vec(os, "output_min", model.output_min);
    write_vec(os, "output_max", model.output_max);
    os << "meta " << model.final_train_mse << ' ' << model.final_val_mse << ' '
       << model.final_test_mse << ' ' << model.epochs_run << '\n';
    for (size_t l = 0; l < model.weights.size(); ++l) {
        os << "layer " << l << '\n';
        const Mat& w = model.weights[l];
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
            for (Eigen::Index j = 0; j < w.cols(); ++j)
                os << w(i, j) << (j + 1 < w.cols() ? ' ' : '\n');
        }
        for (Eigen::Index i = 0; i < model.biases[l].size(); ++i)
            os << model.biases[l](i) << (i + 1 < model.biases[l].size() ? ' ' : '\n');
    }
    if (!os) throw DomainError("save_model: write failed for " + path);
}

MlpModel load_model(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("load_model: cannot open " + path);
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "platoon-mlp" || version != 1)
        throw DomainError("load_model: unrecognized model format in " + path);

    MlpModel m;
    is >> tag;  // "layers"
    {
        std::string line;
        std::getline(is, line);
        std::istringstream ls(line);
        int s;
        while (ls >> s) m.layer_sizes.push_back(s);
    }
    if (m.layer_sizes.size() < 2) throw DomainError("load_model: bad layer list");
    const Eigen::Index in = m.layer_sizes.front();
    const Eigen::Index out = m.layer_sizes.back();
    is >> tag;
    m.input_offset = read_vec(is, in);
    is >> tag;
    m.input_scale = read_vec(is, in);
    is >> tag;
    m.output_min = read_vec(is, out);
    is >> tag;
    m.output_max = read_vec(is, out);
    is >> tag >> m.final_train_mse >> m.final_val_mse >> m.final_test_mse >> m.epochs_run;
    for (size_t l = 0; l + 1 < m.layer_sizes.size(); ++l) {
        int idx;
        is >> tag >> idx;
        Mat w(m.layer_sizes[l + 1], m.layer_sizes[l]);
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j) is >> w(i, j);
        m.weights.push_back(std::move(w));
        m.biases.push_back(read_vec(is, m.layer_sizes[l + 1]));
    }
    if (!is) throw DomainError("load_model: truncated file " + path);
    return m;
}

}  // namespace platoon
