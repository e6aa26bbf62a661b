#pragma once

#include <cstdint>

#include "gbi/qcorr.hpp"

namespace gbi {

// Monte Carlo estimate of an overlap integral.
struct MCEstimate {
    double mean = 0.0;
    double stderr_ = 0.0; // standard error of the mean
    long long points = 0;
    std::uint64_t seed = 0;
    Scenario scenario;
};

// L_{d,N}: integral of dot(E_d(sum of settings), C_d(settings)) over all
// observers' settings, by plain i.i.d. Monte Carlo.  Deterministic in
// (seed, points) — the result is bit-identical for any worker count.
// threads <= 0 means use all available.
MCEstimate mc_overlap(const Scenario& sc, long long points, std::uint64_t seed,
                      int threads = 0, FrameKind kind = FrameKind::Recursive);

// Serial reference implementation, kept for testing the parallel kernel.
// Same blocked accumulation, no threading; bit-identical to mc_overlap.
MCEstimate mc_overlap_serial(const Scenario& sc, long long points, std::uint64_t seed,
                             FrameKind kind = FrameKind::Recursive);

// (2/pi)^N for d=2, ((9+2*sqrt(3)*pi)/(4*pi^2))^N for d=3.
double closed_form_L(int d, int n);

// Tensor-product midpoint quadrature of |E_d|^2 over [0,1)^{d-1}, refined
// until successive refinements differ by < 1e-7.  Equals 1/d.
double norm_quadrature(int d, FrameKind kind = FrameKind::Recursive);

} // namespace gbi
