#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gbi/errors.hpp"
#include "gbi/estimator.hpp"
#include "gbi/lrmodel.hpp"
#include "gbi/rng.hpp"

using namespace gbi;

constexpr double kPi = 3.14159265358979323846;

TEST_CASE("closed forms") {
    CHECK(closed_form_L(2, 1) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    CHECK(closed_form_L(2, 2) == doctest::Approx(0.405285).epsilon(1e-5));
    CHECK(closed_form_L(2, 3) == doctest::Approx(0.258012).epsilon(1e-5));
    CHECK(closed_form_L(3, 1) == doctest::Approx(0.503637).epsilon(1e-5));
    CHECK(closed_form_L(3, 2) == doctest::Approx(0.253650).epsilon(1e-5));
    CHECK_THROWS_AS(closed_form_L(4, 1), invalid_argument_error);
}

TEST_CASE("norm quadrature equals 1/d") {
    for (int d = 2; d <= 5; ++d) CHECK(std::abs(norm_quadrature(d) - 1.0 / d) < 1e-6);
    CHECK(std::abs(norm_quadrature(4, FrameKind::Eq17) - 0.25) < 1e-6);
    CHECK_THROWS_AS(norm_quadrature(7), invalid_argument_error);
}

TEST_CASE("mc_overlap input validation") {
    Scenario sc(2, 2);
    CHECK_THROWS_AS(mc_overlap(sc, 999, 1), invalid_argument_error);
}

TEST_CASE("reproducibility: serial and parallel runs are bit-identical") {
    Scenario sc(3, 2);
    const MCEstimate serial = mc_overlap_serial(sc, 200000, 42);
    const MCEstimate p1 = mc_overlap(sc, 200000, 42, 1);
    const MCEstimate p2 = mc_overlap(sc, 200000, 42, 2);
    const MCEstimate p7 = mc_overlap(sc, 200000, 42, 7);
    CHECK(serial.mean == p1.mean);
    CHECK(serial.mean == p2.mean);
    CHECK(serial.mean == p7.mean);
    CHECK(serial.stderr_ == p7.stderr_);
}

TEST_CASE("estimates agree with the closed forms at 3 sigma") {
    Scenario sc2(2, 3);
    const MCEstimate e2 = mc_overlap(sc2, 300000, 7);
    CHECK(std::abs(e2.mean - closed_form_L(2, 3)) < 3.0 * e2.stderr_);
    Scenario sc3(3, 2);
    const MCEstimate e3 = mc_overlap(sc3, 300000, 7);
    CHECK(std::abs(e3.mean - closed_form_L(3, 2)) < 3.0 * e3.stderr_);
}

TEST_CASE("stderr scales as 1/sqrt(points)") {
    Scenario sc(3, 2);
    const MCEstimate small = mc_overlap(sc, 100000, 3);
    const MCEstimate big = mc_overlap(sc, 400000, 3);
    const double ratio = small.stderr_ / big.stderr_;
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
}

TEST_CASE("frame invariance of the overlap (d=4)") {
    Scenario sc(4, 2);
    const MCEstimate rec = mc_overlap(sc, 400000, 5, 0, FrameKind::Recursive);
    const MCEstimate alt = mc_overlap(sc, 400000, 5, 0, FrameKind::Eq17);
    // same samples, same labels, orthogonally-mapped dot products: the means
    // agree to rounding, far below the Monte Carlo error
    CHECK(std::abs(rec.mean - alt.mean) < 1e-12);
}

TEST_CASE("spot check against the published table: L_{4,2}") {
    Scenario sc(4, 2);
    const MCEstimate est = mc_overlap(sc, 2000000, 1);
    CHECK(std::abs(est.mean - 0.170095) / 0.170095 < 0.01);
}
