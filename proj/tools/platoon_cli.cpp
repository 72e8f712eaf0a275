// Command-line front end: simulate / optimize / dataset / train / infer /
// check-step over a shared key=value configuration.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "platoon/config.hpp"
#include "platoon/io.hpp"

namespace fs = std::filesystem;
using namespace platoon;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSafety = 2;
constexpr int kExitSolver = 3;

struct CommonArgs {
    std::string config_path;
    std::string preset_name;
    std::vector<std::string> overrides;
    std::string out;
    long seed = -1;
    double horizon = -1.0;
    double step = -1.0;
    int budget = -1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (key = value lines)");
        cmd->add_option("--preset", preset_name, "named preset: scenario1 or scenario2");
        cmd->add_option("--set", overrides, "per-field override, dotted.key=value");
        cmd->add_option("--out", out, "output directory");
        cmd->add_option("--seed", seed, "top-level seed");
        cmd->add_option("--horizon", horizon, "simulation horizon tf [s]");
        cmd->add_option("--step", step, "sampling period T [s]");
        cmd->add_option("--budget", budget, "optimizer evaluation budget");
    }

    ExperimentConfig build() const {
        ExperimentConfig cfg;
        if (!preset_name.empty()) cfg = preset(preset_name);
        // An explicit config file replaces the preset outright.
        if (!config_path.empty()) cfg = load_config(config_path);
        for (const std::string& o : overrides) apply_override(cfg, o);
        if (!out.empty()) cfg.out_dir = out;
        if (seed >= 0) {
            cfg.seed = static_cast<std::uint64_t>(seed);
            cfg.dataset.seed = cfg.seed;
        }
        if (horizon > 0.0) cfg.sim.tf = horizon;
        if (step > 0.0) cfg.sim.T = step;
        if (budget > 0) cfg.opt_budget = budget;
        cfg.validate();
        return cfg;
    }
};

void ensure_out(const ExperimentConfig& cfg) { fs::create_directories(cfg.out_dir); }

int run_simulate(const CommonArgs& args) {
    const ExperimentConfig cfg = args.build();
    ensure_out(cfg);
    const PlatoonState initial = initial_state_from_config(cfg);
    const Trajectory traj = simulate(initial, cfg.model, cfg.potential, cfg.sim);

    const fs::path dir(cfg.out_dir);
    write_trajectory_csv(traj, (dir / "trajectory.csv").string());
    write_timeseries_svg(traj, (dir / "spacings.svg").string(), "spacings", "s_i [m]");
    write_timeseries_svg(traj, (dir / "accelerations.svg").string(), "forces", "F_i [m/s^2]");
    write_timeseries_svg(traj, (dir / "speeds.svg").string(), "speeds", "v_i [m/s]");
    std::ofstream((dir / "config.txt").string()) << serialize_config(cfg);

    if (traj.exited_omega) {
        std::cerr << "rollout left the admissible set: " << traj.omega_violation
                  << " (partial trajectory written)\n";
        return kExitSafety;
    }
    const TrajectoryRow& last = traj.rows.back();
    std::cout << "simulated " << traj.rows.size() << " rows to t = " << last.time
              << " s; final spacings:";
    for (Eigen::Index i = 0; i < last.spacings.size(); ++i) std::cout << ' ' << last.spacings(i);
    std::cout << '\n';
    return kExitOk;
}

int run_optimize(const CommonArgs& args) {
    const ExperimentConfig cfg = args.build();
    ensure_out(cfg);
    const PlatoonState initial = initial_state_from_config(cfg);
    const OptimizationResult result =
        optimize_parameters(initial, cfg.model, cfg.objective, cfg.sim, cfg.opt_budget,
                            cfg.opt_restarts, cfg.seed);
    const fs::path report = fs::path(cfg.out_dir) / "optimization.txt";
    write_optimization_report(result, report.string());
    std::cout << "best (alpha, r, p) = (" << result.best.alpha << ", " << result.best.r << ", "
              << result.best.p << "), objective " << result.objective << ", "
              << (result.success ? "feasible" : "NO FEASIBLE POINT") << '\n';
    return result.success ? kExitOk : kExitSolver;
}

int run_dataset(const CommonArgs& args) {
    const ExperimentConfig cfg = args.build();
    ensure_out(cfg);
    const Dataset data = generate_dataset(cfg.dataset, cfg.model, cfg.objective, cfg.sim,
                                          cfg.opt_budget, cfg.opt_restarts);
    const fs::path dir(cfg.out_dir);
    save_dataset(data, (dir / "dataset.csv").string(), (dir / "dataset_meta.txt").string());
    std::cout << "wrote " << data.inputs.rows() << " rows (" << data.dropped << " dropped)\n";
    return kExitOk;
}

int run_train(const CommonArgs& args) {
    const ExperimentConfig cfg = args.build();
    if (cfg.dataset_path.empty())
        throw DomainError("train: paths.dataset must point at a generated dataset CSV");
    ensure_out(cfg);
    const fs::path dir(cfg.out_dir);
    const std::string meta = cfg.dataset_meta_path.empty()
                                 ? (fs::path(cfg.dataset_path).parent_path() / "dataset_meta.txt").string()
                                 : cfg.dataset_meta_path;
    const Dataset data = load_dataset(cfg.dataset_path, meta);
    const SplitData split = split_dataset(data);

    const int in_dim = 2 * data.spec.n - 1;
    MlpModel model = make_model({in_dim, 32, 16, 3}, cfg.seed);
    model.input_offset = input_offset_vector(data.spec);
    model.input_scale = input_scale_vector(data.spec);
    model.output_min = target_min_vector(cfg.model);
    model.output_max = target_max_vector(cfg.model);

    TrainConfig tc = cfg.train;
    tc.seed = cfg.seed;
    const TrainReport report = train(model, split, tc);
    model.final_test_mse = mse(model, split.test_x, split.test_y);
    save_model(model, (dir / "model.txt").string());
    std::cout << "trained " << report.epochs_run << " epochs; train/val/test MSE = "
              << model.final_train_mse << " / " << model.final_val_mse << " / "
              << model.final_test_mse << '\n';
    return kExitOk;
}

int run_infer(const CommonArgs& args) {
    const ExperimentConfig cfg = args.build();
    if (cfg.model_path.empty())
        throw DomainError("infer: paths.model must point at a trained model file");
    const MlpModel model = load_model(cfg.model_path);
    const PlatoonState initial = initial_state_from_config(cfg);
    const PotentialSpec spec = predict(model, initial, cfg.model);

    const FeasibilityReport rep = check_feasible(spec, cfg.objective);
    std::cout << "alpha = " << spec.alpha << "\nr = " << spec.r << "\np = " << spec.p
              << "\nslope_max = " << rep.max_slope << "\nslope_ok = " << (rep.slope_ok ? 1 : 0)
              << '\n';
    ensure_out(cfg);
    std::ofstream os(fs::path(cfg.out_dir) / "predicted_spec.txt");
    os.precision(17);
    os << "format platoon-potential-spec 1\n"
       << "kind performance\n"
       << "alpha " << spec.alpha << "\nr " << spec.r << "\np " << spec.p << '\n'
       << "slope_ok " << (rep.slope_ok ? 1 : 0) << '\n';
    return kExitOk;
}

int run_check_step(const CommonArgs& args, double T_request) {
    const ExperimentConfig cfg = args.build();
    const double T = T_request > 0.0 ? T_request : cfg.sim.T;
    const PlatoonState initial = initial_state_from_config(cfg);
    const ForceVector fv = feedback_forces(initial, cfg.model, cfg.potential);

    bool all_ok = true;
    double min_T_bound = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= cfg.model.n; ++i) {
        const SafetyCertificate cert = check_safe_step(initial, fv, T, cfg.model, i);
        min_T_bound = std::min(min_T_bound, cert.max_admissible_T);
        std::cout << "vehicle " << i << ": T bound " << cert.max_admissible_T
                  << " s, admissible F in (" << cert.force_lo << ", " << cert.force_hi
                  << "), F = " << fv.forces(i - 1) << " -> "
                  << (cert.passed() ? "ok" : "VIOLATED") << '\n';
        if (!cert.passed()) all_ok = false;
    }
    std::cout << "max admissible T from spacing bound: " << min_T_bound << " s\n";
    std::cout << "requested T = " << T << " s: " << (all_ok ? "certified" : "not certified")
              << '\n';
    return all_ok ? kExitOk : kExitSafety;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Platoon potential-field control: simulation, tuning, surrogate"};
    app.require_subcommand(1);

    CommonArgs sim_args, opt_args, data_args, train_args, infer_args, check_args;
    double check_T = -1.0;

    sim_args.attach(app.add_subcommand("simulate", "closed-loop rollout, CSV + plots"));
    opt_args.attach(app.add_subcommand("optimize", "tune (alpha, r, p) for an initial condition"));
    data_args.attach(app.add_subcommand("dataset", "generate the surrogate training dataset"));
    train_args.attach(app.add_subcommand("train", "train the parameter-prediction network"));
    infer_args.attach(app.add_subcommand("infer", "predict (alpha, r, p) with a trained network"));
    auto* check = app.add_subcommand("check-step", "sampling-period safety certificates");
    check_args.attach(check);
    check->add_option("--T", check_T, "sampling period to certify [s]");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("simulate")) return run_simulate(sim_args);
        if (app.got_subcommand("optimize")) return run_optimize(opt_args);
        if (app.got_subcommand("dataset")) return run_dataset(data_args);
        if (app.got_subcommand("train")) return run_train(train_args);
        if (app.got_subcommand("infer")) return run_infer(infer_args);
        if (app.got_subcommand("check-step")) return run_check_step(check_args, check_T);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
