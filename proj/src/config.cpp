#include "platoon/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include "platoon/rng.hpp"

namespace platoon {

void ExperimentConfig::validate() const {
    model.validate();
    sim.validate();
    objective.validate();
    dataset.validate();
    train.validate();
    if (potential.kind == PotentialKind::PerformanceSensitive) {
        if (potential.alpha < kAlphaMin || potential.alpha > kAlphaMax)
            throw DomainError("config: potential.alpha outside [1e-3, 1e-1]");
        if (!(potential.r > model.L && potential.r <= model.lambda - kHillWidth))
            throw DomainError("config: potential.r outside (L, lambda-3]");
        if (potential.p < kPMin || potential.p > kPMax)
            throw DomainError("config: potential.p outside [3, 9]");
    }
    if (opt_budget < opt_restarts * 20)
        throw DomainError("config: opt.budget must be at least 20 per restart");
}

namespace {

struct FieldMap {
    std::map<std::string, std::function<void(ExperimentConfig&, const std::string&)>> setters;
    std::vector<std::pair<std::string, std::function<std::string(const ExperimentConfig&)>>>
        getters;

    void number(const std::string& key, std::function<double&(ExperimentConfig&)> ref) {
        setters[key] = [ref](ExperimentConfig& c, const std::string& v) { ref(c) = std::stod(v); };
        getters.emplace_back(key, [ref](const ExperimentConfig& c) {
            std::ostringstream os;
            os.precision(17);
            os << ref(const_cast<ExperimentConfig&>(c));
            return os.str();
        });
    }
    void integer(const std::string& key, std::function<int&(ExperimentConfig&)> ref) {
        setters[key] = [ref](ExperimentConfig& c, const std::string& v) { ref(c) = std::stoi(v); };
        getters.emplace_back(key, [ref](const ExperimentConfig& c) {
            return std::to_string(ref(const_cast<ExperimentConfig&>(c)));
        });
    }
    void text(const std::string& key, std::function<std::string&(ExperimentConfig&)> ref) {
        setters[key] = [ref](ExperimentConfig& c, const std::string& v) { ref(c) = v; };
        getters.emplace_back(key, [ref](const ExperimentConfig& c) {
            return ref(const_cast<ExperimentConfig&>(c));
        });
    }
};

#define NUM_FIELD(key, expr) \
    fm.number(key, [](ExperimentConfig& c) -> double& { return expr; })
#define INT_FIELD(key, expr) \
    fm.integer(key, [](ExperimentConfig& c) -> int& { return expr; })
#define TEXT_FIELD(key, expr) \
    fm.text(key, [](ExperimentConfig& c) -> std::string& { return expr; })

const FieldMap& field_map() {
    static const FieldMap fm = [] {
        FieldMap fm;
        fm.setters["seed"] = [](ExperimentConfig& c, const std::string& v) {
            c.seed = std::stoull(v);
        };
        fm.getters.emplace_back("seed", [](const ExperimentConfig& c) {
            return std::to_string(c.seed);
        });
        TEXT_FIELD("out", c.out_dir);
        TEXT_FIELD("paths.model", c.model_path);
        TEXT_FIELD("paths.dataset", c.dataset_path);
        TEXT_FIELD("paths.dataset_meta", c.dataset_meta_path);

        NUM_FIELD("model.L", c.model.L);
        NUM_FIELD("model.lambda", c.model.lambda);
        NUM_FIELD("model.v_star", c.model.v_star);
        NUM_FIELD("model.v_max", c.model.v_max);
        NUM_FIELD("model.epsilon", c.model.epsilon);
        NUM_FIELD("model.mu", c.model.mu);
        INT_FIELD("model.n", c.model.n);

        fm.setters["potential.kind"] = [](ExperimentConfig& c, const std::string& v) {
            if (v == "legacy")
                c.potential.kind = PotentialKind::Legacy;
            else if (v == "performance")
                c.potential.kind = PotentialKind::PerformanceSensitive;
            else
                throw DomainError("config: potential.kind must be legacy or performance");
        };
        fm.getters.emplace_back("potential.kind", [](const ExperimentConfig& c) {
            return c.potential.kind == PotentialKind::Legacy ? std::string("legacy")
                                                             : std::string("performance");
        });
        NUM_FIELD("potential.alpha", c.potential.alpha);
        NUM_FIELD("potential.r", c.potential.r);
        NUM_FIELD("potential.p", c.potential.p);

        NUM_FIELD("sim.T", c.sim.T);
        NUM_FIELD("sim.t0", c.sim.t0);
        NUM_FIELD("sim.tf", c.sim.tf);
        INT_FIELD("sim.record_stride", c.sim.record_stride);
        fm.setters["sim.mode"] = [](ExperimentConfig& c, const std::string& v) {
            if (v == "exact")
                c.sim.mode = SimMode::ExactZOH;
            else if (v == "rk4")
                c.sim.mode = SimMode::ReferenceRK4;
            else
                throw DomainError("config: sim.mode must be exact or rk4");
        };
        fm.getters.emplace_back("sim.mode", [](const ExperimentConfig& c) {
            return c.sim.mode == SimMode::ExactZOH ? std::string("exact") : std::string("rk4");
        });
        INT_FIELD("sim.rk4_substeps", c.sim.rk4_substeps);

        NUM_FIELD("objective.w1", c.objective.w1);
        NUM_FIELD("objective.w2", c.objective.w2);
        NUM_FIELD("objective.z", c.objective.z);
        NUM_FIELD("objective.accel_norm", c.objective.accel_norm);
        NUM_FIELD("objective.spacing_norm", c.objective.spacing_norm);

        INT_FIELD("dataset.count", c.dataset.count);
        NUM_FIELD("dataset.spacing_lo", c.dataset.spacing_lo);
        NUM_FIELD("dataset.spacing_hi", c.dataset.spacing_hi);
        NUM_FIELD("dataset.speed_lo", c.dataset.speed_lo);
        NUM_FIELD("dataset.speed_hi", c.dataset.speed_hi);
        NUM_FIELD("dataset.standstill", c.dataset.standstill);
        NUM_FIELD("dataset.headway", c.dataset.headway);
        NUM_FIELD("dataset.train_frac", c.dataset.train_frac);
        NUM_FIELD("dataset.val_frac", c.dataset.val_frac);
        NUM_FIELD("dataset.test_frac", c.dataset.test_frac);

        NUM_FIELD("train.learning_rate", c.train.learning_rate);
        INT_FIELD("train.max_epochs", c.train.max_epochs);
        INT_FIELD("train.patience", c.train.patience);
        NUM_FIELD("train.target_mse", c.train.target_mse);
        INT_FIELD("train.batch_size", c.train.batch_size);

        INT_FIELD("opt.budget", c.opt_budget);
        INT_FIELD("opt.restarts", c.opt_restarts);
        return fm;
    }();
    return fm;
}

#undef NUM_FIELD
#undef INT_FIELD
#undef TEXT_FIELD

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw DomainError("config: expected key=value, got '" + assignment + "'");
    const std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));
    const auto& fm = field_map();
    const auto it = fm.setters.find(key);
    if (it == fm.setters.end()) throw DomainError("config: unknown key '" + key + "'");
    it->second(cfg, value);
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        apply_override(cfg, line);
    }
    // Keep the dataset's vehicle count in lockstep with the model.
    cfg.dataset.n = cfg.model.n;
    cfg.dataset.seed = cfg.seed;
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw DomainError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << is.rdbuf();
    return parse_config_text(buffer.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "# platoon experiment configuration\n";
    for (const auto& [key, get] : field_map().getters)
        os << key << " = " << get(cfg) << '\n';
    return os.str();
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig cfg;  // defaults already carry the standard road constants
    if (name == "scenario1") {
        cfg.potential = PotentialSpec::legacy(cfg.model);
    } else if (name == "scenario2") {
        // Tuned performance-sensitive parameters for initial spacings in
        // (8, 12) m at ~30 m/s; see the optimizer CLI for re-deriving them.
        cfg.potential = PotentialSpec::performance(0.0010, 11.1, 6.1, cfg.model);
    } else {
        throw DomainError("unknown preset '" + name + "' (expected scenario1 or scenario2)");
    }
    return cfg;
}

PlatoonState initial_state_from_config(const ExperimentConfig& cfg) {
    DatasetSpec dspec = cfg.dataset;
    dspec.n = cfg.model.n;
    auto rng = seeded_stream(cfg.seed, 0);
    return sample_initial_state(dspec, rng);
}

}  // namespace platoon
