#include <doctest.h>

#include "helpers.hpp"
#include "platoon/potential.hpp"
#include "platoon/simulate.hpp"

using namespace platoon;
using namespace platoon::test;

namespace {

PotentialSpec spec_014() {
    return PotentialSpec::performance(0.01, 12.0, 4.0, paper_params());
}

double central_diff(double s, const PotentialSpec& spec, double h = 1e-6) {
    return (v_eval(s + h, spec) - v_eval(s - h, spec)) / (2.0 * h);
}

double central_diff2(double s, const PotentialSpec& spec, double h = 1e-5) {
    return (v_prime(s + h, spec) - v_prime(s - h, spec)) / (2.0 * h);
}

}  // namespace

TEST_CASE("piecewise values") {
    const PotentialSpec spec = spec_014();
    CHECK(v_eval(25.0, spec) == 0.0);
    CHECK(v_eval(20.0, spec) == 0.0);
    CHECK(v_eval(8.0, spec) == doctest::Approx(5.76));
    // Hill term vanishes exactly at s = r.
    CHECK(v_eval(12.0, spec) == doctest::Approx(0.01 * 512.0 / 7.0));
    CHECK(v_eval(12.0, spec) == doctest::Approx(v_eval(12.0 - 1e-10, spec)));
    CHECK_THROWS_AS(v_eval(5.0, spec), DomainError);
    CHECK_THROWS_AS(v_eval(3.0, spec), DomainError);
    CHECK_THROWS_AS(v_prime(4.0, spec), DomainError);
    CHECK_THROWS_AS(v_second(4.0, spec), DomainError);
}

TEST_CASE("derivative values against the finite-difference oracle") {
    const PotentialSpec spec = spec_014();
    CHECK(v_prime(25.0, spec) == 0.0);
    CHECK(v_prime(20.0, spec) == 0.0);
    // Case-1 slope at s=10, cross-checked by central difference.
    CHECK(v_prime(10.0, spec) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(v_prime(10.0, spec) == doctest::Approx(central_diff(10.0, spec)).epsilon(1e-6));
}

TEST_CASE("finite-difference consistency over random feasible specs") {
    const ModelParams params = paper_params();
    auto rng = seeded_stream(21, 0);
    std::uniform_real_distribution<double> alpha(1e-3, 1e-1);
    std::uniform_real_distribution<double> rpos(5.5, 17.0);
    std::uniform_real_distribution<double> pexp(3.0, 9.0);
    std::uniform_real_distribution<double> spacing(5.01 + 0.01, 25.0);
    for (int k = 0; k < 1000; ++k) {
        const PotentialSpec spec =
            PotentialSpec::performance(alpha(rng), rpos(rng), pexp(rng), params);
        const double s = spacing(rng);
        const double analytic = v_prime(s, spec);
        const double numeric = central_diff(s, spec);
        CHECK(std::abs(analytic - numeric) <
              std::max(1e-5, 1e-4 * std::abs(analytic)));
    }
}

TEST_CASE("second derivative matches finite differences of the slope") {
    const PotentialSpec spec = spec_014();
    for (double s : {6.0, 9.0, 12.5, 13.7, 16.0, 19.0}) {
        CHECK(v_second(s, spec) ==
              doctest::Approx(central_diff2(s, spec)).epsilon(1e-5));
    }
    CHECK(v_second(25.0, spec) == 0.0);
}

TEST_CASE("junctions are C2 for p in [3,9]") {
    const ModelParams params = paper_params();
    const double delta = 1e-8;
    for (double p : {3.0, 4.0, 6.0, 9.0}) {
        const PotentialSpec spec = PotentialSpec::performance(0.01, 12.0, p, params);
        for (double j : {12.0, 15.0, 20.0}) {
            CHECK(std::abs(v_eval(j - delta, spec) - v_eval(j + delta, spec)) < 1e-6);
            CHECK(std::abs(v_prime(j - delta, spec) - v_prime(j + delta, spec)) < 1e-6);
            CHECK(std::abs(v_second(j - delta, spec) - v_second(j + delta, spec)) < 1e-6);
        }
    }
}

TEST_CASE("p = 2 breaks the curvature junction at s = r") {
    const PotentialSpec spec = PotentialSpec::performance(0.01, 12.0, 2.0, paper_params());
    const double delta = 1e-8;
    CHECK(std::abs(v_second(12.0 - delta, spec) - v_second(12.0 + delta, spec)) > 1e-3);
}

TEST_CASE("curvature vanishes approaching the cutoff") {
    const PotentialSpec spec = spec_014();
    CHECK(std::abs(v_second(20.0 - 1e-7, spec)) < 1e-6);
}

TEST_CASE("only the base term scales with alpha") {
    const ModelParams params = paper_params();
    const PotentialSpec a1 = PotentialSpec::performance(0.02, 12.0, 4.0, params);
    const PotentialSpec a2 = PotentialSpec::performance(0.04, 12.0, 4.0, params);
    for (double s : {6.0, 9.0, 11.9, 15.1, 18.0})
        CHECK(v_eval(s, a2) == doctest::Approx(2.0 * v_eval(s, a1)));
    // Inside the hill the alpha-independent term breaks pure scaling.
    CHECK(v_eval(13.0, a2) < 2.0 * v_eval(13.0, a1));
}

TEST_CASE("blow-up near the minimum distance") {
    const PotentialSpec spec = spec_014();
    CHECK(v_eval(5.0 + 1e-7, spec) > 1e6 * v_eval(6.0, spec));
}

TEST_CASE("legacy stand-in matches the base term at the fixed scale") {
    const ModelParams params = paper_params();
    const PotentialSpec legacy = PotentialSpec::legacy(params);
    CHECK(v_eval(10.0, legacy) == doctest::Approx(kLegacyScale * 1000.0 / 5.0));
    CHECK(v_eval(22.0, legacy) == 0.0);
    // Strictly decreasing on (L, lambda).
    double prev = v_eval(5.1, legacy);
    for (double s = 5.2; s < 20.0; s += 0.1) {
        const double v = v_eval(s, legacy);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("hill slope maximum dominates the endpoints and grows with p") {
    const ModelParams params = paper_params();
    const PotentialSpec spec = spec_014();
    const SlopeMax m = max_abs_slope_on_hill(spec);
    CHECK(m.value >= std::abs(v_prime(12.0, spec)));
    CHECK(m.value >= std::abs(v_prime(15.0 - 1e-9, spec)));
    CHECK(m.s_at_max >= 12.0);
    CHECK(m.s_at_max <= 15.0);

    const SlopeMax p5 =
        max_abs_slope_on_hill(PotentialSpec::performance(0.01, 12.0, 5.0, params));
    const SlopeMax p6 =
        max_abs_slope_on_hill(PotentialSpec::performance(0.01, 12.0, 6.0, params));
    CHECK(p6.value >= p5.value);
}

TEST_CASE("equilibria: legacy has no interior roots") {
    const EquilibriumSet set = find_equilibria(PotentialSpec::legacy(paper_params()));
    CHECK(set.roots.empty());
    CHECK(set.flat_region_beyond_lambda);
}

TEST_CASE("a strong hill creates a local minimum followed by a local maximum") {
    const ModelParams params = paper_params();
    const PotentialSpec spec = PotentialSpec::performance(0.001, 11.0, 4.0, params);
    const EquilibriumSet set = find_equilibria(spec);
    REQUIRE(set.roots.size() == 2);
    CHECK(set.roots[0].is_local_min);
    CHECK_FALSE(set.roots[1].is_local_min);
    CHECK(set.roots[0].s < set.roots[1].s);
    // Roots really are roots.
    CHECK(std::abs(v_prime(set.roots[0].s, spec)) < 1e-6);
    CHECK(std::abs(v_prime(set.roots[1].s, spec)) < 1e-6);
}

TEST_CASE("a weak hill may create no interior equilibrium") {
    // Large alpha: the base slope overwhelms the capped hill term.
    const PotentialSpec spec = PotentialSpec::performance(0.1, 12.0, 3.0, paper_params());
    const EquilibriumSet set = find_equilibria(spec);
    CHECK(set.roots.empty());
}

TEST_CASE("two-vehicle platoon relaxes back to the local minimum") {
    const ModelParams params = paper_params(2);
    const PotentialSpec spec = PotentialSpec::performance(0.001, 11.0, 4.0, params);
    const EquilibriumSet set = find_equilibria(spec);
    REQUIRE(!set.roots.empty());
    REQUIRE(set.roots[0].is_local_min);
    const double s_min = set.roots[0].s;

    const PlatoonState initial = make_state({s_min + 0.1}, {30.0, 30.0});
    SimConfig cfg;
    cfg.T = 0.01;
    cfg.tf = 60.0;
    const Trajectory traj = simulate(initial, params, spec, cfg);
    REQUIRE_FALSE(traj.exited_omega);
    CHECK(traj.rows.back().spacings(0) == doctest::Approx(s_min).epsilon(0.05 / s_min));
}
