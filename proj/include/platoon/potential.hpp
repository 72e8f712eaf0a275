#ifndef PLATOON_POTENTIAL_HPP
#define PLATOON_POTENTIAL_HPP

#include <vector>

#include "platoon/types.hpp"

namespace platoon {

enum class PotentialKind { Legacy, PerformanceSensitive };

/// Width of the hill window [r, r+hill_width) added by the
/// performance-sensitive potential.
inline constexpr double kHillWidth = 3.0;

/// Fixed scale of the legacy potential's cubic barrier.  Legacy has no
/// tunable scale; this constant is chosen so a platoon started anywhere
/// in the usual merge envelope settles just shy of lambda within a
/// minute instead of blasting past it.
inline constexpr double kLegacyScale = 0.45;

/// Which potential family to use plus its shape parameters.
/// alpha, r, p are ignored for Legacy.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::PerformanceSensitive;
    double alpha = 0.05;  // base-term scale
    double r = 9.0;       // hill start [m]
    double p = 4.0;       // hill sharpness
    double L = 5.0;       // copied from ModelParams
    double lambda = 20.0;

    static PotentialSpec legacy(const ModelParams& params) {
        PotentialSpec spec;
        spec.kind = PotentialKind::Legacy;
        spec.L = params.L;
        spec.lambda = params.lambda;
        return spec;
    }

    static PotentialSpec performance(double alpha, double r, double p,
                                     const ModelParams& params) {
        PotentialSpec spec;
        spec.kind = PotentialKind::PerformanceSensitive;
        spec.alpha = alpha;
        spec.r = r;
        spec.p = p;
        spec.L = params.L;
        spec.lambda = params.lambda;
        return spec;
    }
};

/// Potential value V(s). Diverges as s -> L+, zero for s >= lambda.
double v_eval(double s, const PotentialSpec& spec);

/// Analytic first derivative V'(s).
double v_prime(double s, const PotentialSpec& spec);

/// Analytic second derivative V''(s).
double v_second(double s, const PotentialSpec& spec);

/// Max of |V'| over the hill window [r, r+3] and its argmax.
/// Dense grid scan refined by golden-section search.
struct SlopeMax {
    double s_at_max = 0.0;
    double value = 0.0;
};
SlopeMax max_abs_slope_on_hill(const PotentialSpec& spec);

/// An isolated root of V' on (L, lambda), classified by curvature sign.
struct Equilibrium {
    double s = 0.0;
    bool is_local_min = false;  // false means local max
};

/// All isolated roots of V' on (L, lambda).  The flat region s >= lambda
/// (V' identically zero) is reported via the flag, not as discrete roots.
struct EquilibriumSet {
    std::vector<Equilibrium> roots;
    bool flat_region_beyond_lambda = true;
};
EquilibriumSet find_equilibria(const PotentialSpec& spec);

}  // namespace platoon

#endif  // PLATOON_POTENTIAL_HPP
