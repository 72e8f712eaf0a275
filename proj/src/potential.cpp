#include "platoon/potential.hpp"

#include <cmath>

namespace platoon {

namespace {

void require_above_min(double s, const PotentialSpec& spec) {
    if (!(s > spec.L))
        throw DomainError("potential: spacing s = " + std::to_string(s) +
                          " must exceed L = " + std::to_string(spec.L));
}

double base_scale(const PotentialSpec& spec) {
    return spec.kind == PotentialKind::Legacy ? kLegacyScale : spec.alpha;
}

// Base term a*(lambda-s)^3/(s-L) and its derivatives on (L, lambda).
double base_value(double s, double a, double L, double lambda) {
    const double u = lambda - s;
    const double w = s - L;
    return a * u * u * u / w;
}

double base_prime(double s, double a, double L, double lambda) {
    const double u = lambda - s;
    const double w = s - L;
    return -a * u * u * (3.0 * w + u) / (w * w);
}

double base_second(double s, double a, double L, double lambda) {
    const double u = lambda - s;
    const double w = s - L;
    return 2.0 * a * u * (3.0 * w * w + 3.0 * u * w + u * u) / (w * w * w);
}

bool in_hill(double s, const PotentialSpec& spec) {
    return spec.kind == PotentialKind::PerformanceSensitive && s >= spec.r &&
           s < spec.r + kHillWidth;
}

// Hill term (r+3-s)^p (s-r)^p / (s-L)^2 on [r, r+3), with
// a = s - r and b = r + 3 - s so a + b = 3.
double hill_value(double s, const PotentialSpec& spec) {
    const double a = s - spec.r;
    const double b = spec.r + kHillWidth - s;
    const double w = s - spec.L;
    return std::pow(a, spec.p) * std::pow(b, spec.p) / (w * w);
}

double hill_prime(double s, const PotentialSpec& spec) {
    const double a = s - spec.r;
    const double b = spec.r + kHillWidth - s;
    const double w = s - spec.L;
    const double p = spec.p;
    const double A = std::pow(a, p) * std::pow(b, p);
    const double Ap = p * std::pow(a, p - 1.0) * std::pow(b, p - 1.0) * (b - a);
    return Ap / (w * w) - 2.0 * A / (w * w * w);
}

double hill_second(double s, const PotentialSpec& spec) {
    const double a = s - spec.r;
    const double b = spec.r + kHillWidth - s;
    const double w = s - spec.L;
    const double p = spec.p;
    const double A = std::pow(a, p) * std::pow(b, p);
    const double Ap = p * std::pow(a, p - 1.0) * std::pow(b, p - 1.0) * (b - a);
    const double App = p * (p - 1.0) * std::pow(a, p - 2.0) * std::pow(b, p - 2.0) *
                           (b - a) * (b - a) -
                       2.0 * p * std::pow(a, p - 1.0) * std::pow(b, p - 1.0);
    const double C = 1.0 / (w * w);
    const double Cp = -2.0 / (w * w * w);
    const double Cpp = 6.0 / (w * w * w * w);
    return App * C + 2.0 * Ap * Cp + A * Cpp;
}

}  // namespace

double v_eval(double s, const PotentialSpec& spec) {
    require_above_min(s, spec);
    if (s >= spec.lambda) return 0.0;
    double v = base_value(s, base_scale(spec), spec.L, spec.lambda);
    if (in_hill(s, spec)) v += hill_value(s, spec);
    return v;
}

double v_prime(double s, const PotentialSpec& spec) {
    require_above_min(s, spec);
    if (s >= spec.lambda) return 0.0;
    double d = base_prime(s, base_scale(spec), spec.L, spec.lambda);
    if (in_hill(s, spec)) d += hill_prime(s, spec);
    return d;
}

double v_second(double s, const PotentialSpec& spec) {
    require_above_min(s, spec);
    if (s >= spec.lambda) return 0.0;
    double d = base_second(s, base_scale(spec), spec.L, spec.lambda);
    if (in_hill(s, spec)) d += hill_second(s, spec);
    return d;
}

SlopeMax max_abs_slope_on_hill(const PotentialSpec& spec) {
    const double lo = spec.r;
    const double hi = spec.r + kHillWidth;
    auto slope = [&](double s) { return std::abs(v_prime(s, spec)); };

    // Dense scan at <= 1e-3 m.
    const int cells = 3000;
    const double h = (hi - lo) / cells;
    double best_s = lo;
    double best = slope(lo);
    for (int i = 1; i <= cells; ++i) {
        const double s = (i == cells) ? hi : lo + i * h;
        const double val = slope(s);
        if (val > best) {
            best = val;
            best_s = s;
        }
    }

    // Golden-section refinement of the maximum around the best cell.
    double a = std::max(lo, best_s - h);
    double b = std::min(hi, best_s + h);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    while (b - a > 1e-6) {
        const double c = b - gr * (b - a);
        const double d = a + gr * (b - a);
        if (slope(c) > slope(d))
            b = d;
        else
            a = c;
    }
    const double s_star = 0.5 * (a + b);
    const double v_star = slope(s_star);
    SlopeMax out;
    if (v_star >= best) {
        out.s_at_max = s_star;
        out.value = v_star;
    } else {
        out.s_at_max = best_s;
        out.value = best;
    }
    return out;
}

EquilibriumSet find_equilibria(const PotentialSpec& spec) {
    EquilibriumSet set;
    if (spec.kind == PotentialKind::Legacy) return set;  // strictly decreasing base

    const double lo = spec.L + 1e-6;
    const double hi = spec.lambda - 1e-9;
    const double step = 1e-3;
    double prev_s = lo;
    double prev_f = v_prime(prev_s, spec);
    for (double s = lo + step; s < hi; s += step) {
        const double f = v_prime(s, spec);
        if (prev_f == 0.0) {
            // Grid point landed exactly on a root.
            Equilibrium eq{prev_s, v_second(prev_s, spec) > 0.0};
            set.roots.push_back(eq);
        } else if (prev_f * f < 0.0) {
            // Bisection to 1e-9.
            double a = prev_s, b = s, fa = prev_f;
            while (b - a > 1e-9) {
                const double m = 0.5 * (a + b);
                const double fm = v_prime(m, spec);
                if (fa * fm <= 0.0)
                    b = m;
                else {
                    a = m;
                    fa = fm;
                }
            }
            const double root = 0.5 * (a + b);
            set.roots.push_back({root, v_second(root, spec) > 0.0});
        }
        prev_s = s;
        prev_f = f;
    }
    return set;
}

}  // namespace platoon
