#include "platoon/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "platoon/rng.hpp"

namespace platoon {

namespace {

constexpr double kSlopePenalty = 1e3;
constexpr double kRMargin = 0.1;  // keep r strictly above L

using Point = std::array<double, 3>;

Point clamp_unit(Point u) {
    for (double& c : u) c = std::clamp(c, 0.0, 1.0);
    return u;
}

PotentialSpec decode(const Point& u, const ModelParams& params) {
    PotentialSpec spec;
    spec.kind = PotentialKind::PerformanceSensitive;
    spec.L = params.L;
    spec.lambda = params.lambda;
    const double r_lo = params.L + kRMargin;
    const double r_hi = params.lambda - kHillWidth;
    spec.alpha = kAlphaMin + u[0] * (kAlphaMax - kAlphaMin);
    spec.r = r_lo + u[1] * (r_hi - r_lo);
    spec.p = kPMin + u[2] * (kPMax - kPMin);
    return spec;
}

struct Evaluator {
    const PlatoonState& initial;
    const ModelParams& params;
    const ObjectiveSpec& obj;
    const SimConfig& simcfg;
    int evaluations = 0;

    // Best strictly feasible point seen anywhere in the search.
    bool have_feasible = false;
    PotentialSpec best_feasible;
    double best_feasible_value = 0.0;
    // Fallback when nothing feasible was found.
    bool have_any = false;
    PotentialSpec best_any;
    double best_any_value = 0.0;

    double operator()(const Point& raw) {
        const Point u = clamp_unit(raw);
        const PotentialSpec spec = decode(u, params);
        ++evaluations;

        const double slope = max_abs_slope_on_hill(spec).value;
        const ObjectiveValue val = evaluate_objective(initial, params, spec, obj, simcfg);
        double penalized = val.value;
        if (slope > obj.z) penalized += kSlopePenalty * (slope - obj.z);

        if (!have_any || penalized < best_any_value) {
            have_any = true;
            best_any = spec;
            best_any_value = penalized;
        }
        if (slope <= obj.z && !val.omega_violation &&
            (!have_feasible || val.value < best_feasible_value)) {
            have_feasible = true;
            best_feasible = spec;
            best_feasible_value = val.value;
        }
        return penalized;
    }
};

// One downhill-simplex run from the given center, spending at most
// max_evals objective evaluations.
void nelder_mead(Evaluator& eval, const Point& center, int max_evals) {
    constexpr int dim = 3;
    struct Vertex {
        Point u;
        double f;
    };
    std::array<Vertex, dim + 1> simplex;

    int used = 0;
    auto call = [&](const Point& u) {
        ++used;
        return eval(u);
    };

    simplex[0] = {clamp_unit(center), 0.0};
    simplex[0].f = call(simplex[0].u);
    for (int i = 0; i < dim; ++i) {
        Point u = center;
        u[i] += (u[i] < 0.7) ? 0.25 : -0.25;
        simplex[i + 1] = {clamp_unit(u), 0.0};
        simplex[i + 1].f = call(simplex[i + 1].u);
    }

    while (used < max_evals) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
        if (std::abs(simplex[dim].f - simplex[0].f) < 1e-10) break;

        Point centroid{0, 0, 0};
        for (int i = 0; i < dim; ++i)
            for (int c = 0; c < dim; ++c) centroid[c] += simplex[i].u[c] / dim;

        auto blend = [&](double t) {
            Point u;
            for (int c = 0; c < dim; ++c)
                u[c] = centroid[c] + t * (centroid[c] - simplex[dim].u[c]);
            return clamp_unit(u);
        };

        const Point refl = blend(1.0);
        const double f_refl = call(refl);
        if (f_refl < simplex[0].f) {
            const Point expd = blend(2.0);
            const double f_expd = (used < max_evals) ? call(expd) : f_refl;
            if (f_expd < f_refl)
                simplex[dim] = {expd, f_expd};
            else
                simplex[dim] = {refl, f_refl};
        } else if (f_refl < simplex[dim - 1].f) {
            simplex[dim] = {refl, f_refl};
        } else {
            const Point contr = blend(f_refl < simplex[dim].f ? 0.5 : -0.5);
            const double f_contr = (used < max_evals) ? call(contr) : f_refl;
            if (f_contr < std::min(f_refl, simplex[dim].f)) {
                simplex[dim] = {contr, f_contr};
            } else {
                // Shrink toward the best vertex.
                for (int i = 1; i <= dim && used < max_evals; ++i) {
                    for (int c = 0; c < dim; ++c)
                        simplex[i].u[c] = 0.5 * (simplex[i].u[c] + simplex[0].u[c]);
                    simplex[i].f = call(simplex[i].u);
                }
            }
        }
    }
}

}  // namespace

OptimizationResult optimize_parameters(const PlatoonState& initial, const ModelParams& params,
                                       const ObjectiveSpec& obj, const SimConfig& simcfg,
                                       int budget, int restarts, std::uint64_t seed) {
    params.validate();
    obj.validate();
    if (restarts < 1) throw DomainError("optimize_parameters: restarts must be >= 1");
    if (budget < restarts * 20)
        throw DomainError("optimize_parameters: budget must be at least 20 per restart");

    Evaluator eval{initial, params, obj, simcfg};
    const int per_restart = budget / restarts;
    const std::uint64_t halton_offset = seed % 101;

    OptimizationResult result;
    for (int rs = 0; rs < restarts; ++rs) {
        const std::uint64_t k = halton_offset + static_cast<std::uint64_t>(rs);
        const Point center{van_der_corput(k + 1, 2), van_der_corput(k + 1, 3),
                           van_der_corput(k + 1, 5)};
        const int before = eval.evaluations;

        nelder_mead(eval, center, per_restart);

        RestartRecord rec;
        rec.evaluations = eval.evaluations - before;
        rec.feasible = eval.have_feasible;
        rec.best = eval.have_feasible ? eval.best_feasible : eval.best_any;
        rec.objective = eval.have_feasible ? eval.best_feasible_value : eval.best_any_value;
        result.history.push_back(rec);
    }

    result.evaluations = eval.evaluations;
    if (eval.have_feasible) {
        result.best = eval.best_feasible;
        result.objective = eval.best_feasible_value;
        result.success = true;
    } else {
        result.best = eval.best_any;
        result.objective = eval.best_any_value;
        result.success = false;
    }
    const FeasibilityReport rep = check_feasible(result.best, obj);
    result.box_ok = rep.box_ok();
    result.slope_ok = rep.slope_ok;
    return result;
}

}  // namespace platoon
