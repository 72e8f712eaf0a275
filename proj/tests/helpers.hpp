#ifndef PLATOON_TEST_HELPERS_HPP
#define PLATOON_TEST_HELPERS_HPP

#include <random>

#include "platoon/config.hpp"
#include "platoon/rng.hpp"

namespace platoon::test {

inline ModelParams paper_params(int n = 7) {
    ModelParams p;
    p.L = 5.0;
    p.lambda = 20.0;
    p.v_star = 30.0;
    p.v_max = 35.0;
    p.epsilon = 0.2;
    p.mu = 0.5;
    p.n = n;
    return p;
}

/// State built from explicit spacings and speeds, leader at x = 0.
inline PlatoonState make_state(const std::vector<double>& spacings,
                               const std::vector<double>& speeds) {
    PlatoonState st;
    const auto n = static_cast<Eigen::Index>(speeds.size());
    st.positions.resize(n);
    st.speeds.resize(n);
    st.positions(0) = 0.0;
    for (Eigen::Index i = 1; i < n; ++i)
        st.positions(i) = st.positions(i - 1) - spacings[static_cast<size_t>(i - 1)];
    for (Eigen::Index i = 0; i < n; ++i) st.speeds(i) = speeds[static_cast<size_t>(i)];
    return st;
}

/// Random initial condition with spacings in (8, 12) m and speeds in
/// (27, 33) m/s, matching the simulated scenarios.
inline PlatoonState scenario_initial(std::uint64_t seed, int n = 7) {
    auto rng = seeded_stream(seed, 0);
    std::uniform_real_distribution<double> spacing(8.0, 12.0);
    std::uniform_real_distribution<double> speed(27.0, 33.0);
    std::vector<double> gaps, speeds;
    speeds.push_back(speed(rng));
    for (int i = 1; i < n; ++i) {
        gaps.push_back(spacing(rng));
        speeds.push_back(speed(rng));
    }
    return make_state(gaps, speeds);
}

}  // namespace platoon::test

#endif
