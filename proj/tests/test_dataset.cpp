#include <doctest.h>

#include <cstdio>

#include "helpers.hpp"
#include "platoon/dataset.hpp"

using namespace platoon;
using namespace platoon::test;

TEST_CASE("sampled initial conditions honor the headway rule") {
    DatasetSpec dspec;
    dspec.n = 7;
    // With standstill 5 m and headway 0.1 s, the tightest admissible gap
    // is 5 + 0.1*33 = 8.3 m at the top of the speed range, so part of the
    // uniform (8, 12) draw must be rejected.
    auto rng = seeded_stream(99, 0);
    int saw_below_83 = 0;
    for (int k = 0; k < 200; ++k) {
        const PlatoonState st = sample_initial_state(dspec, rng);
        const Vec s = st.spacings();
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            CHECK(s(i) > dspec.standstill + dspec.headway * st.speeds(i + 1));
            if (s(i) < 8.3) ++saw_below_83;
        }
    }
    // Gaps below 8.3 m are admissible when the rear vehicle is slow, but
    // every emitted gap beats its own speed-dependent floor.
    CHECK(saw_below_83 > 0);
}

TEST_CASE("split follows the 85/7.5/7.5 fractions") {
    Dataset data;
    data.spec.count = 6000;
    data.spec.n = 7;
    data.inputs = Mat::Zero(6000, 13);
    data.targets = Mat::Zero(6000, 3);
    for (int i = 0; i < 6000; ++i) data.inputs(i, 0) = i;  // traceable rows

    const SplitData s = split_dataset(data);
    CHECK(s.train_x.rows() == 5100);
    CHECK(s.val_x.rows() == 450);
    CHECK(s.test_x.rows() == 450);
    CHECK(s.train_x(0, 0) == 0.0);
    CHECK(s.val_x(0, 0) == 5100.0);
    CHECK(s.test_x(0, 0) == 5550.0);
}

TEST_CASE("generated rows are normalized and deterministic") {
    const ModelParams params = paper_params();
    DatasetSpec dspec;
    dspec.count = 4;
    dspec.n = 7;
    dspec.seed = 31;
    ObjectiveSpec obj;
    SimConfig cfg;
    cfg.T = 0.05;
    cfg.tf = 5.0;

    const Dataset a = generate_dataset(dspec, params, obj, cfg, 40, 1);
    const Dataset b = generate_dataset(dspec, params, obj, cfg, 40, 1);
    REQUIRE(a.inputs.rows() == 4);
    CHECK((a.inputs - b.inputs).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.targets - b.targets).cwiseAbs().maxCoeff() == 0.0);

    CHECK(a.inputs.minCoeff() >= 0.0);
    CHECK(a.inputs.maxCoeff() <= 1.0);
    CHECK(a.targets.minCoeff() >= 0.0);
    CHECK(a.targets.maxCoeff() <= 1.0);
}

TEST_CASE("dataset CSV and metadata round-trip") {
    Dataset data;
    data.spec.count = 3;
    data.spec.n = 3;
    data.spec.seed = 17;
    data.dropped = 1;
    data.inputs = Mat::Random(3, 5).cwiseAbs();
    data.targets = Mat::Random(3, 3).cwiseAbs();

    save_dataset(data, "test_ds.csv", "test_ds_meta.txt");
    const Dataset back = load_dataset("test_ds.csv", "test_ds_meta.txt");
    std::remove("test_ds.csv");
    std::remove("test_ds_meta.txt");

    REQUIRE(back.inputs.rows() == 3);
    CHECK(back.spec.n == 3);
    CHECK(back.spec.seed == 17);
    CHECK(back.dropped == 1);
    CHECK((back.inputs - data.inputs).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((back.targets - data.targets).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("vehicle-count mismatch is rejected") {
    const ModelParams params = paper_params(5);
    DatasetSpec dspec;
    dspec.n = 7;
    ObjectiveSpec obj;
    SimConfig cfg;
    CHECK_THROWS_AS(generate_dataset(dspec, params, obj, cfg, 40, 1), DomainError);
}

TEST_CASE("impossible headway floor is reported") {
    DatasetSpec dspec;
    dspec.standstill = 20.0;  // above the whole spacing range
    auto rng = seeded_stream(1, 0);
    CHECK_THROWS_AS(sample_initial_state(dspec, rng), DomainError);
}
