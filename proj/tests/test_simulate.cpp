#include <doctest.h>

#include "helpers.hpp"
#include "platoon/simulate.hpp"

using namespace platoon;
using namespace platoon::test;

namespace {

// Test-local RK4 over the held-force (constant acceleration) dynamics,
// independent of the implementation path under test.
PlatoonState rk4_constant_force(const PlatoonState& state, const Vec& F, double T) {
    auto deriv = [&](const PlatoonState& s) { return std::pair<Vec, Vec>{s.speeds, F}; };
    auto shift = [&](const PlatoonState& s, const std::pair<Vec, Vec>& d, double c) {
        PlatoonState out = s;
        out.positions += c * d.first;
        out.speeds += c * d.second;
        return out;
    };
    const auto k1 = deriv(state);
    const auto k2 = deriv(shift(state, k1, T / 2));
    const auto k3 = deriv(shift(state, k2, T / 2));
    const auto k4 = deriv(shift(state, k3, T));
    PlatoonState next = state;
    next.positions += (T / 6.0) * (k1.first + 2 * k2.first + 2 * k3.first + k4.first);
    next.speeds += (T / 6.0) * (k1.second + 2 * k2.second + 2 * k3.second + k4.second);
    next.time += T;
    return next;
}

}  // namespace

TEST_CASE("one exact step integrates constant acceleration") {
    PlatoonState st;
    st.positions = Vec::Zero(1);
    st.speeds = Vec::Constant(1, 30.0);
    ForceVector fv;
    fv.forces = Vec::Constant(1, 1.0);
    fv.gains = Vec::Constant(1, 0.5);
    const PlatoonState next = step_exact(st, fv, 0.1);
    CHECK(next.positions(0) == doctest::Approx(3.005).epsilon(1e-15));
    CHECK(next.speeds(0) == doctest::Approx(30.1).epsilon(1e-15));
    CHECK(next.time == doctest::Approx(0.1));
}

TEST_CASE("zero force is pure translation") {
    const PlatoonState st = make_state({10.0, 11.0}, {28.0, 29.0, 31.0});
    ForceVector fv;
    fv.forces = Vec::Zero(3);
    fv.gains = Vec::Zero(3);
    const PlatoonState next = step_exact(st, fv, 0.5);
    for (int i = 0; i < 3; ++i) {
        CHECK(next.positions(i) == doctest::Approx(st.positions(i) + 0.5 * st.speeds(i)));
        CHECK(next.speeds(i) == st.speeds(i));
    }
}

TEST_CASE("exact step agrees with RK4 on held forces to machine precision") {
    auto rng = seeded_stream(3, 0);
    std::uniform_real_distribution<double> pos(-100.0, 100.0);
    std::uniform_real_distribution<double> vel(0.0, 35.0);
    std::uniform_real_distribution<double> force(-10.0, 10.0);
    std::uniform_real_distribution<double> period(1e-3, 0.5);
    for (int k = 0; k < 100; ++k) {
        PlatoonState st;
        st.positions = Vec::Constant(2, pos(rng));
        st.positions(1) -= 10.0;
        st.speeds = Vec::Constant(2, vel(rng));
        ForceVector fv;
        fv.forces = Vec::Constant(2, force(rng));
        fv.gains = Vec::Zero(2);
        const double T = period(rng);
        const PlatoonState a = step_exact(st, fv, T);
        const PlatoonState b = rk4_constant_force(st, fv.forces, T);
        CHECK(a.positions(0) == doctest::Approx(b.positions(0)).epsilon(1e-14));
        CHECK(a.speeds(0) == doctest::Approx(b.speeds(0)).epsilon(1e-14));
    }
}

TEST_CASE("safety certificate bounds") {
    const ModelParams params = paper_params(3);
    const PlatoonState st = make_state({10.0, 10.0}, {30.0, 30.0, 30.0});
    ForceVector fv;
    fv.forces = Vec::Zero(3);
    fv.gains = Vec::Constant(3, 0.5);

    const SafetyCertificate cert = check_safe_step(st, fv, 0.1, params, 2);
    CHECK(cert.max_admissible_T == doctest::Approx(5.0 / 35.0));
    CHECK(cert.spacing_ok);
    CHECK(cert.force_lo == doctest::Approx(-300.0));
    CHECK(cert.force_hi == doctest::Approx(50.0));
    CHECK(cert.force_ok);
    CHECK(cert.passed());

    // T above the spacing bound fails with the spacing inequality flagged.
    const SafetyCertificate late = check_safe_step(st, fv, 0.2, params, 2);
    CHECK_FALSE(late.spacing_ok);
    CHECK(late.force_ok);
    CHECK_FALSE(late.passed());

    // Force outside the admissible interval.
    fv.forces(1) = 60.0;
    const SafetyCertificate hard = check_safe_step(st, fv, 0.1, params, 2);
    CHECK_FALSE(hard.force_ok);

    const PlatoonState bad = make_state({4.0, 10.0}, {30.0, 30.0, 30.0});
    CHECK_THROWS_AS(check_safe_step(bad, fv, 0.1, params, 2), DomainError);
}

TEST_CASE("equilibrium start stays at equilibrium") {
    const ModelParams params = paper_params(4);
    const PlatoonState st = make_state({21.0, 25.0, 30.0}, {30, 30, 30, 30});
    SimConfig cfg;
    cfg.tf = 5.0;
    const Trajectory traj =
        simulate(st, params, PotentialSpec::performance(0.01, 12.0, 4.0, params), cfg);
    REQUIRE_FALSE(traj.exited_omega);
    for (const TrajectoryRow& row : traj.rows) {
        for (Eigen::Index i = 0; i < 4; ++i) CHECK(row.speeds(i) == doctest::Approx(30.0));
        CHECK(row.spacings(0) == doctest::Approx(21.0));
        CHECK(row.spacings(2) == doctest::Approx(30.0));
    }
}

TEST_CASE("trajectory rows are time-ordered and spacings match positions") {
    const ModelParams params = paper_params();
    const PlatoonState st = scenario_initial(5);
    SimConfig cfg;
    cfg.tf = 2.0;
    cfg.record_stride = 7;
    const Trajectory traj =
        simulate(st, params, PotentialSpec::performance(0.01, 11.0, 4.0, params), cfg);
    for (size_t k = 1; k < traj.rows.size(); ++k)
        CHECK(traj.rows[k].time > traj.rows[k - 1].time);
    for (const TrajectoryRow& row : traj.rows)
        for (Eigen::Index i = 1; i < row.positions.size(); ++i)
            CHECK(row.spacings(i - 1) ==
                  doctest::Approx(row.positions(i - 1) - row.positions(i)).epsilon(1e-12));
}

TEST_CASE("ZOH and the continuous-feedback reference agree at small steps") {
    const ModelParams params = paper_params();
    const PotentialSpec spec = PotentialSpec::performance(0.001, 11.0, 4.0, params);
    const PlatoonState st = scenario_initial(2);

    SimConfig zoh;
    zoh.T = 1e-3;
    zoh.tf = 10.0;
    zoh.record_stride = 1000;
    SimConfig rk4 = zoh;
    rk4.mode = SimMode::ReferenceRK4;
    rk4.rk4_substeps = 10;

    const Trajectory a = simulate(st, params, spec, zoh);
    const Trajectory b = simulate(st, params, spec, rk4);
    REQUIRE_FALSE(a.exited_omega);
    REQUIRE_FALSE(b.exited_omega);
    const TrajectoryRow& ra = a.rows.back();
    const TrajectoryRow& rb = b.rows.back();
    for (Eigen::Index i = 0; i < ra.positions.size(); ++i) {
        CHECK(std::abs(ra.positions(i) - rb.positions(i)) < 1e-3);
        CHECK(std::abs(ra.speeds(i) - rb.speeds(i)) < 1e-3);
    }
}

TEST_CASE("certified horizon counts and monotonicity") {
    const ModelParams params = paper_params();
    const PotentialSpec spec = PotentialSpec::performance(0.001, 11.0, 4.0, params);
    const PlatoonState st = scenario_initial(9);

    const CertifiedHorizon full = max_certified_horizon(st, params, spec, 1e-3, 500);
    CHECK(full.certified_steps == 500);
    CHECK_FALSE(full.first_failure.has_value());

    // T above the initial spacing bound certifies nothing.
    const CertifiedHorizon none = max_certified_horizon(st, params, spec, 1.0, 500);
    CHECK(none.certified_steps == 0);
    REQUIRE(none.first_failure.has_value());
    CHECK_FALSE(none.first_failure->spacing_ok);

    const long at_T = max_certified_horizon(st, params, spec, 0.02, 200).certified_steps;
    const long at_T2 = max_certified_horizon(st, params, spec, 0.01, 200).certified_steps;
    const long at_T4 = max_certified_horizon(st, params, spec, 0.005, 200).certified_steps;
    CHECK(at_T2 >= at_T);
    CHECK(at_T4 >= at_T2);
}

TEST_CASE("certified rollouts never leave the admissible interior") {
    const ModelParams params = paper_params();
    const PotentialSpec spec = PotentialSpec::performance(0.001, 11.0, 4.0, params);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PlatoonState st = scenario_initial(seed);
        PlatoonState state = st;
        for (int k = 0; k < 2000; ++k) {
            const ForceVector fv = feedback_forces(state, params, spec);
            bool all_ok = true;
            for (int i = 1; i <= params.n; ++i)
                all_ok = all_ok && check_safe_step(state, fv, 0.01, params, i).passed();
            REQUIRE(all_ok);
            state = step_exact(state, fv, 0.01);
            REQUIRE(in_omega_strict(state, params));
        }
    }
}

TEST_CASE("invalid inputs are rejected") {
    const ModelParams params = paper_params(3);
    const PotentialSpec spec = PotentialSpec::performance(0.01, 12.0, 4.0, params);
    SimConfig cfg;
    const PlatoonState bad = make_state({4.5, 10.0}, {30, 30, 30});
    CHECK_THROWS_AS(simulate(bad, params, spec, cfg), DomainError);

    SimConfig bad_cfg;
    bad_cfg.T = -0.1;
    const PlatoonState ok = make_state({10.0, 10.0}, {30, 30, 30});
    CHECK_THROWS_AS(simulate(ok, params, spec, bad_cfg), DomainError);
}
