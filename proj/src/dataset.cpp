#include "platoon/dataset.hpp"

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "platoon/rng.hpp"

namespace platoon {

namespace {

double label_value(const PlatoonState& initial, const ModelParams& params,
                   const PotentialSpec& spec, const ObjectiveSpec& obj,
                   const SimConfig& simcfg) {
    if (!check_feasible(spec, obj).feasible())
        return std::numeric_limits<double>::infinity();
    const ObjectiveValue v = evaluate_objective(initial, params, spec, obj, simcfg);
    return v.omega_violation ? std::numeric_limits<double>::infinity() : v.value;
}

// The objective often has a flat valley of near-optimal (alpha, r, p), so
// the raw optimizer output is an arbitrary valley point and regresses
// poorly.  Canonicalize every label to (approximately) the lowest corner
// of its valley: walk each coordinate down as far as the objective allows
// within a small tolerance.  Equally good optima then map to one
// representative, which keeps the label map learnable.
PotentialSpec canonical_label(const OptimizationResult& res, const PlatoonState& initial,
                              const DatasetSpec& dspec, const ModelParams& params,
                              const ObjectiveSpec& obj, const SimConfig& simcfg) {
    PotentialSpec spec = res.best;
    const double limit = res.objective + std::max(1e-6, 1e-2 * std::abs(res.objective));
    struct Axis {
        double PotentialSpec::* field;
        double lo;
    };
    // r never walks below the sampled spacing floor: hills entirely under
    // the gap range are dynamically inert for every sampled state, so the
    // valley is flat there and the walk would wander meaninglessly.
    const double r_floor = std::max(params.L + 0.1, std::min(dspec.spacing_lo, spec.r));
    const Axis axes[] = {{&PotentialSpec::alpha, kAlphaMin},
                         {&PotentialSpec::r, r_floor},
                         {&PotentialSpec::p, kPMin}};
    for (int pass = 0; pass < 4; ++pass) {
        bool moved = false;
        for (const Axis& ax : axes) {
            double good = spec.*(ax.field);
            double bad = ax.lo;
            PotentialSpec probe = spec;
            probe.*(ax.field) = bad;
            if (label_value(initial, params, probe, obj, simcfg) <= limit) {
                spec = probe;
                moved = true;
                continue;
            }
            const double start = good;
            while (good - bad > 1e-4) {
                probe.*(ax.field) = 0.5 * (good + bad);
                if (label_value(initial, params, probe, obj, simcfg) <= limit)
                    good = probe.*(ax.field);
                else
                    bad = probe.*(ax.field);
            }
            spec.*(ax.field) = good;
            moved = moved || (start - good > 1e-3);
        }
        if (!moved) break;
    }
    return spec;
}

}  // namespace

PlatoonState sample_initial_state(const DatasetSpec& dspec, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> spacing(dspec.spacing_lo, dspec.spacing_hi);
    std::uniform_real_distribution<double> speed(dspec.speed_lo, dspec.speed_hi);

    PlatoonState state;
    state.positions.resize(dspec.n);
    state.speeds.resize(dspec.n);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        state.speeds(0) = speed(rng);
        state.positions(0) = 0.0;
        bool ok = true;
        for (int i = 1; i < dspec.n; ++i) {
            const double gap = spacing(rng);
            const double v_rear = speed(rng);
            // Headway rule: gap must exceed standstill + headway * rear speed.
            if (gap <= dspec.standstill + dspec.headway * v_rear) {
                ok = false;
                break;
            }
            state.positions(i) = state.positions(i - 1) - gap;
            state.speeds(i) = v_rear;
        }
        if (ok) return state;
    }
    throw DomainError("sample_initial_state: headway constraint rejects the whole range");
}

Vec input_offset_vector(const DatasetSpec& dspec) {
    Vec off(2 * dspec.n - 1);
    off.head(dspec.n - 1).setConstant(dspec.spacing_lo);
    off.tail(dspec.n).setConstant(dspec.speed_lo);
    return off;
}

Vec input_scale_vector(const DatasetSpec& dspec) {
    Vec scale(2 * dspec.n - 1);
    scale.head(dspec.n - 1).setConstant(dspec.spacing_hi - dspec.spacing_lo);
    scale.tail(dspec.n).setConstant(dspec.speed_hi - dspec.speed_lo);
    return scale;
}

Vec target_min_vector(const ModelParams& params) {
    Vec lo(3);
    lo << kAlphaMin, params.L, kPMin;
    return lo;
}

Vec target_max_vector(const ModelParams& params) {
    Vec hi(3);
    hi << kAlphaMax, params.lambda - kHillWidth, kPMax;
    return hi;
}

Dataset generate_dataset(const DatasetSpec& dspec, const ModelParams& params,
                         const ObjectiveSpec& obj, const SimConfig& simcfg,
                         int budget, int restarts) {
    dspec.validate();
    params.validate();
    if (params.n != dspec.n)
        throw DomainError("generate_dataset: vehicle counts disagree");

    const Vec in_off = input_offset_vector(dspec);
    const Vec in_scale = input_scale_vector(dspec);
    const Vec t_lo = target_min_vector(params);
    const Vec t_hi = target_max_vector(params);

    Dataset data;
    data.spec = dspec;
    data.inputs.resize(dspec.count, 2 * dspec.n - 1);
    data.targets.resize(dspec.count, 3);

    int kept = 0;
    for (int k = 0; k < dspec.count; ++k) {
        auto rng = seeded_stream(dspec.seed, static_cast<std::uint64_t>(k));
        const PlatoonState initial = sample_initial_state(dspec, rng);

        // One shared optimizer seed keeps the label map a deterministic
        // function of the initial condition alone.
        const OptimizationResult res =
            optimize_parameters(initial, params, obj, simcfg, budget, restarts, dspec.seed);
        if (!res.success) {
            ++data.dropped;
            std::cerr << "generate_dataset: sample " << k
                      << " dropped (no feasible optimum)\n";
            continue;
        }

        Vec raw(2 * dspec.n - 1);
        raw.head(dspec.n - 1) = initial.spacings();
        raw.tail(dspec.n) = initial.speeds;
        data.inputs.row(kept) = ((raw - in_off).cwiseQuotient(in_scale)).transpose();

        const PotentialSpec label = canonical_label(res, initial, dspec, params, obj, simcfg);
        Vec target(3);
        target << label.alpha, label.r, label.p;
        data.targets.row(kept) = ((target - t_lo).cwiseQuotient(t_hi - t_lo)).transpose();
        ++kept;
    }
    data.inputs.conservativeResize(kept, Eigen::NoChange);
    data.targets.conservativeResize(kept, Eigen::NoChange);
    return data;
}

SplitData split_dataset(const Dataset& data) {
    const Eigen::Index rows = data.inputs.rows();
    const auto n_train = static_cast<Eigen::Index>(rows * data.spec.train_frac + 0.5);
    const auto n_val = static_cast<Eigen::Index>(rows * data.spec.val_frac + 0.5);
    const Eigen::Index n_test = rows - n_train - n_val;

    SplitData s;
    s.train_x = data.inputs.topRows(n_train);
    s.train_y = data.targets.topRows(n_train);
    s.val_x = data.inputs.middleRows(n_train, n_val);
    s.val_y = data.targets.middleRows(n_train, n_val);
    s.test_x = data.inputs.bottomRows(n_test);
    s.test_y = data.targets.bottomRows(n_test);
    return s;
}

void save_dataset(const Dataset& data, const std::string& csv_path,
                  const std::string& meta_path) {
    std::ofstream os(csv_path);
    if (!os) throw DomainError("save_dataset: cannot open " + csv_path);
    os.precision(17);
    const int n = data.spec.n;
    for (int i = 2; i <= n; ++i) os << "s_" << i << ',';
    for (int i = 1; i <= n; ++i) os << "v_" << i << ',';
    os << "alpha,r,p\n";
    for (Eigen::Index row = 0; row < data.inputs.rows(); ++row) {
        for (Eigen::Index c = 0; c < data.inputs.cols(); ++c)
            os << data.inputs(row, c) << ',';
        os << data.targets(row, 0) << ',' << data.targets(row, 1) << ','
           << data.targets(row, 2) << '\n';
    }

    std::ofstream meta(meta_path);
    if (!meta) throw DomainError("save_dataset: cannot open " + meta_path);
    meta.precision(17);
    meta << "format platoon-dataset 1\n"
         << "count " << data.inputs.rows() << '\n'
         << "dropped " << data.dropped << '\n'
         << "n " << data.spec.n << '\n'
         << "spacing_range " << data.spec.spacing_lo << ' ' << data.spec.spacing_hi << '\n'
         << "speed_range " << data.spec.speed_lo << ' ' << data.spec.speed_hi << '\n'
         << "standstill " << data.spec.standstill << '\n'
         << "headway " << data.spec.headway << '\n'
         << "split " << data.spec.train_frac << ' ' << data.spec.val_frac << ' '
         << data.spec.test_frac << '\n'
         << "seed " << data.spec.seed << '\n';
}

Dataset load_dataset(const std::string& csv_path, const std::string& meta_path) {
    Dataset data;
    {
        std::ifstream meta(meta_path);
        if (!meta) throw DomainError("load_dataset: cannot open " + meta_path);
        std::string key;
        std::string fmt;
        int version = 0;
        meta >> key >> fmt >> version;
        if (key != "format" || fmt != "platoon-dataset" || version != 1)
            throw DomainError("load_dataset: unrecognized metadata in " + meta_path);
        int count = 0;
        while (meta >> key) {
            if (key == "count")
                meta >> count;
            else if (key == "dropped")
                meta >> data.dropped;
            else if (key == "n")
                meta >> data.spec.n;
            else if (key == "spacing_range")
                meta >> data.spec.spacing_lo >> data.spec.spacing_hi;
            else if (key == "speed_range")
                meta >> data.spec.speed_lo >> data.spec.speed_hi;
            else if (key == "standstill")
                meta >> data.spec.standstill;
            else if (key == "headway")
                meta >> data.spec.headway;
            else if (key == "split")
                meta >> data.spec.train_frac >> data.spec.val_frac >> data.spec.test_frac;
            else if (key == "seed")
                meta >> data.spec.seed;
        }
        data.spec.count = count;
    }

    std::ifstream is(csv_path);
    if (!is) throw DomainError("load_dataset: cannot open " + csv_path);
    std::string line;
    std::getline(is, line);  // header
    const int in_cols = 2 * data.spec.n - 1;
    data.inputs.resize(data.spec.count, in_cols);
    data.targets.resize(data.spec.count, 3);
    Eigen::Index row = 0;
    while (std::getline(is, line) && row < data.spec.count) {
        std::istringstream ls(line);
        std::string cell;
        for (int c = 0; c < in_cols; ++c) {
            std::getline(ls, cell, ',');
            data.inputs(row, c) = std::stod(cell);
        }
        for (int c = 0; c < 3; ++c) {
            std::getline(ls, cell, ',');
            data.targets(row, c) = std::stod(cell);
        }
        ++row;
    }
    if (row != data.spec.count)
        throw DomainError("load_dataset: row count disagrees with metadata");
    return data;
}

}  // namespace platoon
