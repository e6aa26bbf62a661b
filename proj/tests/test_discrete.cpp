#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gbi/discrete.hpp"
#include "gbi/errors.hpp"
#include "gbi/rng.hpp"

using namespace gbi;

namespace {

// Small random scenarios within the exact-enumeration cap.
DiscreteScenario random_instance(SplitMix& rng, int d, int n, int m) {
    Scenario sc(d, n);
    std::vector<std::vector<SettingVector>> settings(n);
    for (auto& obs : settings) {
        obs.resize(m);
        for (auto& v : obs) {
            v.resize(d - 1);
            for (auto& ph : v) ph = rng.uniform();
        }
    }
    return build_scenario(sc, settings);
}

} // namespace

TEST_CASE("tensor values come from direct evaluation of the correlation") {
    // d=2, N=2, settings {0, 1/4} x {1/8, 3/8}: entries are cos(2 pi (a+b))
    Scenario sc(2, 2);
    DiscreteScenario ds = build_scenario(sc, {{{0.0}, {0.25}}, {{0.125}, {0.375}}});
    const double r = std::sqrt(2.0) / 2.0;
    REQUIRE(ds.cells == 4);
    CHECK(ds.tensor[0] == doctest::Approx(r).epsilon(1e-12));   // 0 + 1/8
    CHECK(ds.tensor[1] == doctest::Approx(-r).epsilon(1e-12));  // 0 + 3/8
    CHECK(ds.tensor[2] == doctest::Approx(-r).epsilon(1e-12));  // 1/4 + 1/8
    CHECK(ds.tensor[3] == doctest::Approx(-r).epsilon(1e-12));  // 1/4 + 3/8 -> cos(5 pi/4)
    CHECK(ds.self_overlap() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("single setting, d=3: tensor is the aligned outcome vector") {
    Scenario sc(3, 1);
    DiscreteScenario ds = build_scenario(sc, {{{0.0, 0.0}}});
    REQUIRE(ds.cells == 1);
    CHECK(ds.tensor[0] == doctest::Approx(1.0));
    CHECK(ds.tensor[1] == doctest::Approx(0.0));
    const ClassicalOpt opt = classical_opt_exact(ds);
    CHECK(opt.overlap == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(opt.strategy.labels[0][0] == 0);
}

TEST_CASE("tensor entries are convex mixtures: |entry| <= 1") {
    SplitMix rng(4);
    for (int t = 0; t < 10; ++t) {
        DiscreteScenario ds = random_instance(rng, 3, 2, 3);
        for (double v : ds.tensor) CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("exact optimizer on the CHSH tensor") {
    Scenario sc(2, 2);
    DiscreteScenario ds = build_scenario(sc, {{{0.0}, {0.25}}, {{0.125}, {0.375}}});
    const ClassicalOpt opt = classical_opt_exact(ds);
    CHECK(opt.overlap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // QCR at these settings = 2/sqrt(2) = sqrt(2)
    CHECK(ds.self_overlap() / opt.overlap == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("enumeration cap") {
    SplitMix rng(5);
    DiscreteScenario ds = random_instance(rng, 3, 2, 8); // 3^16 > 10^7
    CHECK_THROWS_AS(classical_opt_exact(ds), resource_limit_error);
}

TEST_CASE("heuristic equals the exact oracle on 50 random small instances") {
    SplitMix rng(99);
    int checked = 0;
    for (int t = 0; t < 50; ++t) {
        const int d = 2 + static_cast<int>(rng.next_below(3));  // 2..4
        const int n = 1 + static_cast<int>(rng.next_below(2));  // 1..2
        const int m = 2 + static_cast<int>(rng.next_below(2));  // 2..3
        DiscreteScenario ds = random_instance(rng, d, n, m);
        const ClassicalOpt exact = classical_opt_exact(ds);
        const ClassicalOpt heur = classical_opt_heuristic(ds, 32, 1000 + t);
        CHECK(heur.overlap <= exact.overlap + 1e-9);
        CHECK(heur.overlap == doctest::Approx(exact.overlap).epsilon(1e-9));
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("zero tensor gives zero overlap") {
    // d=2 single setting at 1/4: cos(pi/2) = 0
    Scenario sc(2, 1);
    DiscreteScenario ds = build_scenario(sc, {{{0.25}}});
    CHECK(std::abs(ds.tensor[0]) < 1e-12);
    const ClassicalOpt heur = classical_opt_heuristic(ds, 4, 3);
    CHECK(std::abs(heur.overlap) < 1e-9);
}

TEST_CASE("optimize_settings: d=2, N=2, M=2 reaches the two-setting optimum sqrt(2)") {
    const auto traj = optimize_settings(Scenario(2, 2), 2, 12345, 4);
    REQUIRE(traj.size() == 1);
    CHECK(traj[0].m == 2);
    CHECK(std::abs(traj[0].qcr - std::sqrt(2.0)) < 1e-3);
}

TEST_CASE("optimize_settings: trajectory is monotone and carries scores") {
    const auto traj = optimize_settings(Scenario(2, 2), 5, 7, 2);
    REQUIRE(traj.size() == 4);
    for (std::size_t i = 1; i < traj.size(); ++i) CHECK(traj[i].qcr >= traj[i - 1].qcr - 1e-12);
    for (const auto& pt : traj) {
        CHECK(pt.qcr >= pt.qcr_fresh - 1e-12);
        CHECK(pt.quantum > 0.0);
        CHECK(pt.classical > 0.0);
    }
}

TEST_CASE("optimize_settings is deterministic in (seed, starts) across thread counts") {
    const auto a = optimize_settings(Scenario(2, 2), 3, 42, 2, 1);
    const auto b = optimize_settings(Scenario(2, 2), 3, 42, 2, 2);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].qcr == b[i].qcr);
        CHECK(a[i].qcr_fresh == b[i].qcr_fresh);
    }
}

TEST_CASE("build_scenario validation") {
    Scenario sc(3, 2);
    CHECK_THROWS_AS(build_scenario(sc, {{{0.1, 0.2}}}), invalid_argument_error);
    CHECK_THROWS_AS(build_scenario(sc, {{{0.1}}, {{0.2}}}), invalid_argument_error);
    CHECK_THROWS_AS(optimize_settings(sc, 1, 1), invalid_argument_error);
}
