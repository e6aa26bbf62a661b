#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "gbi/errors.hpp"
#include "gbi/qcorr.hpp"
#include "gbi/rng.hpp"

using namespace gbi;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Printed closed form of the qutrit correlation function.
std::array<double, 2> e3_printed(double x1, double x2) {
    return {(std::cos(2 * kPi * x1) + std::cos(2 * kPi * (x1 - x2)) + std::cos(2 * kPi * x2)) / 3.0,
            (4.0 / 3.0) * std::sin(kPi * x1) * std::sin(kPi * (x1 - x2)) * std::sin(kPi * x2)};
}

// Printed closed form of the ququart correlation function (cube-diagonal frame).
std::array<double, 3> e4_printed(double x1, double x2, double x3) {
    auto s = [](double t) { return std::sin(2 * kPi * t); };
    auto c = [](double t) { return std::cos(2 * kPi * t); };
    const double r3 = std::sqrt(3.0);
    return {(s(x1 - x2) + c(x1 - x2) - s(x1) + c(x1) + s(x2 - x3) + c(x2 - x3) + s(x3) + c(x3)) / (4 * r3),
            (c(x1 - x3) + c(x2)) / (2 * r3),
            (-s(x1 - x2) + c(x1 - x2) + s(x1) + c(x1) - s(x2 - x3) + c(x2 - x3) - s(x3) + c(x3)) / (4 * r3)};
}

} // namespace

TEST_CASE("outcome probabilities: aligned phases and the shifted point") {
    Scenario sc(3, 2);
    CHECK(prob_outcome(sc, {0.0, 0.0}, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prob_outcome(sc, {0.0, 0.0}, 1) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(prob_outcome(sc, {0.0, 0.0}, 2) == doctest::Approx(0.0).epsilon(1e-12));
    const double third = 1.0 / 3.0;
    CHECK(prob_outcome(sc, {third, 2 * third}, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prob_outcome(sc, {third, 2 * third}, 0) == doctest::Approx(0.0).epsilon(1e-12));
    Scenario q(2, 1);
    CHECK(prob_outcome(q, {0.25}, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(prob_outcome(sc, {0.0, 0.0}, 3), invalid_argument_error);
}

TEST_CASE("probabilities sum to one") {
    SplitMix rng(42);
    for (int d = 2; d <= 7; ++d) {
        Scenario sc(d, 1);
        for (int trial = 0; trial < 20; ++trial) {
            PhaseSum x(d - 1);
            for (auto& v : x) v = rng.uniform();
            double total = 0.0;
            for (int m = 0; m < d; ++m) total += prob_outcome(sc, x, m);
            CHECK(std::abs(total - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("corr_reduced: frozen points") {
    auto e = corr_reduced(3, {0.0, 0.0});
    CHECK(std::abs(e[0] - 1.0) < 1e-12);
    CHECK(std::abs(e[1]) < 1e-12);
    e = corr_reduced(3, {1.0 / 3.0, 2.0 / 3.0});
    CHECK(std::abs(e[0] + 0.5) < 1e-12);
    CHECK(std::abs(e[1] + std::sqrt(3.0) / 2.0) < 1e-12);
    e = corr_reduced(2, {0.25});
    CHECK(std::abs(e[0]) < 1e-12);
}

TEST_CASE("printed-form agreement, d=3 (1000 random points, 1e-12)") {
    SplitMix rng(7);
    for (int t = 0; t < 1000; ++t) {
        const double x1 = rng.uniform(), x2 = rng.uniform();
        const auto e = corr_reduced(3, {x1, x2});
        const auto ref = e3_printed(x1, x2);
        CHECK(std::abs(e[0] - ref[0]) < 1e-12);
        CHECK(std::abs(e[1] - ref[1]) < 1e-12);
    }
}

TEST_CASE("printed-form agreement, d=4 in the cube-diagonal frame (1000 random points, 1e-12)") {
    SplitMix rng(8);
    for (int t = 0; t < 1000; ++t) {
        const double x1 = rng.uniform(), x2 = rng.uniform(), x3 = rng.uniform();
        const auto e = corr_reduced(4, {x1, x2, x3}, FrameKind::Eq17);
        const auto ref = e4_printed(x1, x2, x3);
        for (int i = 0; i < 3; ++i) CHECK(std::abs(e[i] - ref[i]) < 1e-12);
    }
}

TEST_CASE("complex qutrit form") {
    auto z = corr_complex3({0.0, 0.0});
    CHECK(std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-12);
    z = corr_complex3({1.0 / 3.0, 2.0 / 3.0});
    CHECK(std::abs(z - std::complex<double>(-0.5, -std::sqrt(3.0) / 2.0)) < 1e-12);
    SplitMix rng(9);
    for (int t = 0; t < 200; ++t) {
        const double x1 = rng.uniform(), x2 = rng.uniform();
        const auto e = corr_reduced(3, {x1, x2});
        z = corr_complex3({x1, x2});
        CHECK(std::abs(z.real() - e[0]) < 1e-12);
        CHECK(std::abs(z.imag() - e[1]) < 1e-12);
        const auto ref = e3_printed(x1, x2);
        CHECK(std::abs(z.real() - ref[0]) < 1e-12);
    }
    CHECK_THROWS_AS(corr_complex3({0.1}), invalid_argument_error);
}

TEST_CASE("oracle equivalence: d in 2..5, N in 1..3, 100 random draws, 1e-10") {
    SplitMix rng(123);
    for (int d = 2; d <= 5; ++d) {
        for (int n = 1; n <= 3; ++n) {
            Scenario sc(d, n);
            for (int t = 0; t < 100; ++t) {
                std::vector<SettingVector> settings(n, SettingVector(d - 1));
                for (auto& s : settings)
                    for (auto& v : s) v = rng.uniform();
                const auto oracle = corr_oracle(sc, settings);
                const auto reduced = corr_reduced(d, settings_sum(settings, d - 1));
                for (int i = 0; i < d - 1; ++i) CHECK(std::abs(oracle[i] - reduced[i]) < 1e-10);
            }
        }
    }
}

TEST_CASE("oracle frozen points") {
    // qubit cosine
    Scenario sc2(2, 2);
    auto e = corr_oracle(sc2, {{0.1}, {0.15}});
    CHECK(std::abs(e[0] - std::cos(2 * kPi * 0.25)) < 1e-12);
    // perfect correlation at zero phases
    Scenario sc4(4, 2);
    e = corr_oracle(sc4, {{0, 0, 0}, {0, 0, 0}});
    CHECK(std::abs(e[0] - 1.0) < 1e-12);
    CHECK(std::abs(e[1]) < 1e-12);
    CHECK(std::abs(e[2]) < 1e-12);
}

TEST_CASE("oracle cap") {
    Scenario sc(2, 25);
    sc.oracle_cap = 1u << 20;
    std::vector<SettingVector> settings(25, SettingVector{0.0});
    CHECK_THROWS_AS(corr_oracle(sc, settings), resource_limit_error);
}

TEST_CASE("shift invariance: integer offsets do not change the correlation") {
    SplitMix rng(5);
    for (int d : {2, 3, 5}) {
        PhaseSum x(d - 1);
        for (auto& v : x) v = rng.uniform();
        auto base = corr_reduced(d, x);
        PhaseSum shifted = x;
        shifted[0] += 3.0;
        if (d > 2) shifted[d - 2] -= 2.0;
        reduce_mod1(shifted.data(), d - 1);
        auto moved = corr_reduced(d, shifted);
        for (int i = 0; i < d - 1; ++i) CHECK(std::abs(base[i] - moved[i]) < 1e-12);
    }
}

TEST_CASE("scenario validation") {
    CHECK_THROWS_AS(Scenario(1, 2), invalid_argument_error);
    CHECK_THROWS_AS(Scenario(3, 0), invalid_argument_error);
}
